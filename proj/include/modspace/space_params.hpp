#pragma once

#include <stdexcept>
#include <string>

#include "modspace/rational.hpp"

namespace modspace {

// The tuple (s, p, q, n). Weight s is kept as an exact rational so the same
// object drives both the numeric norms and the symbolic rule engine.
struct SpaceParams {
    Rational s;
    ExtendedExponent p;
    ExtendedExponent q;
    int dim = 1;

    SpaceParams() = default;
    SpaceParams(Rational s_, ExtendedExponent p_, ExtendedExponent q_, int n_)
        : s(s_), p(p_), q(q_), dim(n_) {
        if (dim < 1 || dim > 2) throw std::invalid_argument("dimension must be 1 or 2");
    }

    std::string str() const {
        return "M^" + s.str() + "_{" + p.str() + "," + q.str() + "} (n=" + std::to_string(dim) + ")";
    }
};

}  // namespace modspace
