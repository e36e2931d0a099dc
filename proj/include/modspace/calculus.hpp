#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "modspace/rational.hpp"
#include "modspace/space_params.hpp"

namespace modspace {

// --- verdicts ---------------------------------------------------------------

enum class Status { holds, fails, unknown };

inline std::string status_name(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        default: return "unknown";
    }
}

struct RuleHit {
    std::string id;
    std::string statement;
};

struct Verdict {
    Status status = Status::unknown;
    std::vector<RuleHit> rules;
};

// A sufficient rule and a violated necessary rule firing on the same input
// means the rule set itself is broken; this is a test oracle, not a verdict.
struct RuleContradiction : std::logic_error {
    explicit RuleContradiction(const std::string& what) : std::logic_error(what) {}
};

// --- exponent arithmetic (exact, rationals plus infinity) -------------------

inline ExtendedExponent conjugate(const ExtendedExponent& q) {
    if (q.is_infinite()) return ExtendedExponent(Rational(1));
    if (q.value() == Rational(1)) return ExtendedExponent::infinity();
    // q' = q / (q - 1)
    return ExtendedExponent(q.value() / (q.value() - Rational(1)));
}

// n / q' = n (1 - 1/q), with 1/inf = 0.
inline Rational n_over_conj(const ExtendedExponent& q, int n) {
    return Rational(n) * (Rational(1) - q.reciprocal());
}

inline Rational n_over(const ExtendedExponent& q, int n) { return Rational(n) * q.reciprocal(); }

// --- embeddings --------------------------------------------------------------

// Embedding M^{sa}_{pa,qa} into M^{sb}_{pb,qb}, decided exactly as printed:
// pa <= pb and either sa - sb > n (1/qb - 1/qa) or (sa = sb and qa = qb).
// When qa < qb and sb > sa the printed gap condition and the positive-part
// variant found elsewhere in the literature disagree; such inputs get an
// advisory rule flag so callers can tell.
inline Verdict embeds(const SpaceParams& source, const SpaceParams& target) {
    if (source.dim != target.dim) throw std::invalid_argument("embeds: dimension mismatch");
    const int n = source.dim;
    Verdict v;
    if (source.p > target.p) {
        v.status = Status::fails;
        v.rules.push_back({"embedding-iff", "requires p_source <= p_target"});
        return v;
    }
    const Rational gap = source.s - target.s;
    const Rational rhs = Rational(n) * (target.q.reciprocal() - source.q.reciprocal());
    if (source.s == target.s && source.q == target.q) {
        v.status = Status::holds;
        v.rules.push_back({"embedding-iff", "equal weight and equal q with p_source <= p_target"});
        return v;
    }
    if (gap > rhs) {
        v.status = Status::holds;
        v.rules.push_back({"embedding-iff", "s_source - s_target > n (1/q_target - 1/q_source)"});
        if (gap < Rational(0) && source.q < target.q) {
            v.rules.push_back({"positive-part-variant-flag",
                               "a positive-part reading of the gap condition would reject this input"});
        }
        return v;
    }
    v.status = Status::fails;
    v.rules.push_back({"embedding-iff", "weight gap too small: s_source - s_target <= n (1/q_target - 1/q_source)"});
    return v;
}

// Provably sufficient embedding used when composing product rules: either
// plain monotonicity (larger weight, smaller p, smaller q) or a strict
// weight gap paying for a decrease in q. Never relies on the contested
// region of the printed gap condition.
inline bool embeds_sound(const Rational& sa, const ExtendedExponent& pa, const ExtendedExponent& qa,
                         const Rational& sb, const ExtendedExponent& pb, const ExtendedExponent& qb,
                         int n) {
    if (pa > pb) return false;
    if (qa <= qb && sa >= sb) return true;
    if (qa > qb && sa - sb > Rational(n) * (qb.reciprocal() - qa.reciprocal())) return true;
    return false;
}

// Embedding into L_infty (equivalently C_ub and M^0_{inf,1}):
// holds iff s >= 0 and q = 1, or s > n/q'.
inline Verdict embeds_into_Linfty(const SpaceParams& params) {
    Verdict v;
    const bool q_one = params.q == ExtendedExponent(Rational(1));
    if (q_one && params.s >= Rational(0)) {
        v.status = Status::holds;
        v.rules.push_back({"linfty-embedding-iff", "s >= 0 and q = 1"});
        return v;
    }
    if (params.s > n_over_conj(params.q, params.dim)) {
        v.status = Status::holds;
        v.rules.push_back({"linfty-embedding-iff", "s > n/q'"});
        return v;
    }
    v.status = Status::fails;
    v.rules.push_back({"linfty-embedding-iff", "needs s >= 0 with q = 1, or s > n/q'; endpoint s = n/q' excluded"});
    return v;
}

// Algebra property of M^s_{p,q} under pointwise multiplication:
// holds iff s >= 0 and q = 1, or s > n/q'.
inline Verdict is_algebra(const SpaceParams& params) {
    Verdict v;
    const bool q_one = params.q == ExtendedExponent(Rational(1));
    if ((q_one && params.s >= Rational(0)) || params.s > n_over_conj(params.q, params.dim)) {
        v.status = Status::holds;
        v.rules.push_back({"algebra-iff", q_one && !(params.s > n_over_conj(params.q, params.dim))
                                              ? "s >= 0 and q = 1"
                                              : "s > n/q'"});
        return v;
    }
    v.status = Status::fails;
    v.rules.push_back({"algebra-iff", "needs s >= 0 with q = 1, or s > n/q'"});
    return v;
}

// --- the product engine -------------------------------------------------------

// Factor spaces (s1,p1,q1), (s2,p2,q2), target (s0,p,q), dimension n.
struct ProductQuery {
    Rational s1, s2, s0;
    ExtendedExponent p1, p2, p;
    ExtendedExponent q1, q2, q;
    int dim = 1;
};

namespace detail {

struct RuleDef {
    const char* id;
    const char* statement;
};

inline constexpr RuleDef kWeightedProduct{
    "weighted-product-sufficient",
    "q1 = q2 > 1 with q1 <= q, 0 <= t <= min(s1,s2), t >= s0, s1+s2-t > n/q1'"};
inline constexpr RuleDef kL1Factors{"l1-factor-product", "q1 = q2 = 1, min(s1,s2) >= max(0, s0)"};
inline constexpr RuleDef kDualWeight{
    "dual-weight-product",
    "conjugate-index factor: s0 <= s_g <= 0, s_f + s_g >= 0, s_f + s_g - s0 > n/q"};
inline constexpr RuleDef kSmoothedProduct{
    "smoothed-product", "s0 <= 0, one factor embeds into M^{|s0|}_{.,1}, the other into M^{s0}_{.,q}"};
inline constexpr RuleDef kZeroWeight{
    "zero-weight-iff", "s1 = s2 = 0: 1/p <= 1/p1 + 1/p2 and 1 + 1/q <= 1/q1 + 1/q2"};
inline constexpr RuleDef kBalancedNegative{
    "balanced-index-negative", "s1 = s2 = 0, 0 < -s0 < n/q, q >= q1, n(1 + 1/q - 1/q1 - 1/q2) = -s0"};
inline constexpr RuleDef kBalancedPositive{
    "balanced-index-positive",
    "s0 = s1 = s2 in (0, n/q), q > max(q1,q2), n(1 + 1/q - 1/q1 - 1/q2) = s0"};
inline constexpr RuleDef kToftSufficient{
    "toft-sufficient",
    "0 <= 1+1/q-1/q1-1/q2 <= 1/2, s0 <= min(s1,s2), s1+s2 >= 0, "
    "s1+s2-s0 >= n(1+1/q-1/q1-1/q2) with the endpoint cases strict"};

inline constexpr RuleDef kNecessaryOrder{"necessary-weight-order", "s0 <= min(s1, s2) is necessary"};
inline constexpr RuleDef kNecessarySum{"necessary-weight-sum", "s1 + s2 >= 0 is necessary"};
inline constexpr RuleDef kNecessaryGap{"necessary-weight-gap", "s1 + s2 - s0 >= n/q' is necessary"};
inline constexpr RuleDef kMultiplier2{
    "multiplier-necessity",
    "factor 2 space equals the target; factor 1 must satisfy q = 1, s1 >= 0 or s1 > n/q'"};
inline constexpr RuleDef kMultiplier1{
    "multiplier-necessity",
    "factor 1 space equals the target; factor 2 must satisfy q = 1, s2 >= 0 or s2 > n/q'"};
inline constexpr RuleDef kZeroWeightP{"zero-weight-iff", "s = 0 requires 1/p <= 1/p1 + 1/p2"};
inline constexpr RuleDef kZeroWeightQ{"zero-weight-iff", "s = 0 requires 1 + 1/q <= 1/q1 + 1/q2"};
inline constexpr RuleDef kToftOrder{"toft-necessary", "s0 <= min(s1, s2) is necessary"};
inline constexpr RuleDef kToftSum{"toft-necessary", "s1 + s2 >= 0 is necessary"};
inline constexpr RuleDef kToftGap{"toft-necessary",
                                  "s1 + s2 - s0 >= n(1 + 1/q - 1/q1 - 1/q2) is necessary"};
inline constexpr RuleDef kAlgebraNecessity{
    "algebra-iff", "coincident spaces: needs s >= 0 with q = 1, or s > n/q'"};
inline constexpr RuleDef kGap{"gap", "no sufficient rule fired and no necessary condition is violated"};

// Reciprocals and derived quantities shared by every rule. Exponent
// comparisons translate to reversed comparisons of reciprocals, which are
// plain rationals (1/inf = 0), so the hot path never rebuilds exponents.
struct QueryView {
    const ProductQuery& Q;
    Rational rp1, rp2, rp;
    Rational rq1, rq2, rq;
    Rational theta;    // 1 + 1/q - 1/q1 - 1/q2
    Rational n_theta;  // dim * theta
    bool p_ok;         // 1/p <= 1/p1 + 1/p2

    explicit QueryView(const ProductQuery& q)
        : Q(q),
          rp1(q.p1.reciprocal()),
          rp2(q.p2.reciprocal()),
          rp(q.p.reciprocal()),
          rq1(q.q1.reciprocal()),
          rq2(q.q2.reciprocal()),
          rq(q.q.reciprocal()),
          theta(Rational(1) + rq - rq1 - rq2),
          n_theta(Rational(q.dim) * theta),
          p_ok(rp <= rp1 + rp2) {}

    Rational n_over_q() const { return Rational(Q.dim) * rq; }
    Rational n_over_q_conj() const { return Rational(Q.dim) * (Rational(1) - rq); }
};

// Sound embedding on the weight/lq part with a shared p: monotone branch
// (qa <= qb means rqa >= rqb) or the strict gap paying for a q decrease.
inline bool weights_embed(const Rational& sa, const Rational& rqa, const Rational& sb,
                          const Rational& rqb, int n) {
    if (rqa >= rqb && sa >= sb) return true;
    if (rqa < rqb && sa - sb > Rational(n) * (rqb - rqa)) return true;
    return false;
}

// Positive-weight product rule: factors share an lq index q~ > 1 no larger
// than the target's, an intermediate weight t with max(0,s0) <= t <= min(s1,s2)
// exists, and s1 + s2 - t > n/q~'. Sufficient by the weighted convolution
// estimate plus monotone embeddings.
inline const RuleDef* rule_weighted_product(const QueryView& V) {
    if (V.rq1 != V.rq2) return nullptr;
    if (!(V.rq1 < Rational(1))) return nullptr;  // q~ > 1
    if (V.rq1 < V.rq) return nullptr;            // q~ <= q
    if (!V.p_ok) return nullptr;
    const Rational lo = rational_max(Rational(0), V.Q.s0);
    const Rational hi = rational_min(V.Q.s1, V.Q.s2);
    if (lo > hi) return nullptr;
    if (!(V.Q.s1 + V.Q.s2 - lo > Rational(V.Q.dim) * (Rational(1) - V.rq1))) return nullptr;
    return &kWeightedProduct;
}

// q = 1 factors: every M^t_{p,1} with t >= 0 multiplies into itself.
inline const RuleDef* rule_l1_factors(const QueryView& V) {
    if (V.rq1 != Rational(1) || V.rq2 != Rational(1)) return nullptr;
    if (!V.p_ok) return nullptr;
    const Rational hi = rational_min(V.Q.s1, V.Q.s2);
    if (!(hi >= Rational(0) && V.Q.s0 <= hi)) return nullptr;
    return &kL1Factors;
}

// Dual-index rule: one factor measured with the conjugate lq index.
inline const RuleDef* rule_dual_weight(const QueryView& V, bool swapped) {
    const Rational& sa = swapped ? V.Q.s2 : V.Q.s1;  // factor in M^{sa}_{.,q'}
    const Rational& sb = swapped ? V.Q.s1 : V.Q.s2;  // factor in M^{sb}_{.,q}
    const Rational& rqa = swapped ? V.rq2 : V.rq1;
    const Rational& rqb = swapped ? V.rq1 : V.rq2;
    if (V.rq == Rational(0)) return nullptr;  // needs 1 <= q < inf
    if (rqb != V.rq) return nullptr;
    if (rqa != Rational(1) - V.rq) return nullptr;  // qa = q'
    if (!V.p_ok) return nullptr;
    if (!(V.Q.s0 <= sb && sb <= Rational(0))) return nullptr;
    if (!(sa + sb >= Rational(0))) return nullptr;
    if (!(sa + sb - V.Q.s0 > V.n_over_q())) return nullptr;
    return &kDualWeight;
}

// Smoothed-product rule for s0 <= 0: one factor embeds into M^{|s0|}_{.,1},
// the other into M^{s0}_{.,q}; the product is then the limit of the dyadic
// smoothings and obeys the two-factor bound.
inline const RuleDef* rule_smoothed_product(const QueryView& V, bool swapped) {
    if (!(V.Q.s0 <= Rational(0))) return nullptr;
    if (!V.p_ok) return nullptr;
    const Rational& sa = swapped ? V.Q.s2 : V.Q.s1;
    const Rational& sb = swapped ? V.Q.s1 : V.Q.s2;
    const Rational& rqa = swapped ? V.rq2 : V.rq1;
    const Rational& rqb = swapped ? V.rq1 : V.rq2;
    if (!weights_embed(sa, rqa, -V.Q.s0, Rational(1), V.Q.dim)) return nullptr;
    if (!weights_embed(sb, rqb, V.Q.s0, V.rq, V.Q.dim)) return nullptr;
    return &kSmoothedProduct;
}

// Zero-weight case, full iff: 1/p <= 1/p1 + 1/p2 and 1 + 1/q <= 1/q1 + 1/q2.
// Sufficiency extends to targets s0 <= 0 by embedding.
inline const RuleDef* rule_zero_weight(const QueryView& V) {
    if (!(V.Q.s1 == Rational(0) && V.Q.s2 == Rational(0) && V.Q.s0 <= Rational(0))) return nullptr;
    if (!V.p_ok) return nullptr;
    if (!(Rational(1) + V.rq <= V.rq1 + V.rq2)) return nullptr;
    return &kZeroWeight;
}

// Mixed-lq rules with an exact index balance n(1 + 1/q - 1/q1 - 1/q2) = |s0|.
// The balanced positive case is restricted to q strictly above both factor
// indices: at equality it collides with the algebra endpoint necessity.
inline const RuleDef* rule_balanced_negative(const QueryView& V) {
    if (!(V.Q.s1 == Rational(0) && V.Q.s2 == Rational(0) && V.Q.s0 < Rational(0))) return nullptr;
    const Rational zero(0), one(1);
    if (!(V.rq > zero && V.rq < one)) return nullptr;    // 1 < q < inf
    if (!(V.rq1 > zero && V.rq1 < one)) return nullptr;
    if (!(V.rq2 > zero && V.rq2 < one)) return nullptr;
    if (!(-V.Q.s0 < V.n_over_q())) return nullptr;
    if (V.rq > V.rq1) return nullptr;  // q >= q1
    if (!V.p_ok) return nullptr;
    if (!(V.n_theta == -V.Q.s0)) return nullptr;
    return &kBalancedNegative;
}

inline const RuleDef* rule_balanced_positive(const QueryView& V) {
    if (!(V.Q.s0 == V.Q.s1 && V.Q.s1 == V.Q.s2 && V.Q.s0 > Rational(0))) return nullptr;
    const Rational zero(0), one(1);
    if (!(V.rq > zero && V.rq < one)) return nullptr;
    if (!(V.rq1 > zero && V.rq1 < one)) return nullptr;
    if (!(V.rq2 > zero && V.rq2 < one)) return nullptr;
    if (!(V.Q.s0 < V.n_over_q())) return nullptr;
    if (!(V.rq < V.rq1 && V.rq < V.rq2)) return nullptr;  // q > max(q1,q2)
    if (!V.p_ok) return nullptr;
    if (!(V.n_theta == V.Q.s0)) return nullptr;
    return &kBalancedPositive;
}

// General sufficient conditions (a)-(f) with the lq defect theta.
inline const RuleDef* rule_toft_sufficient(const QueryView& V) {
    if (!V.p_ok) return nullptr;                                              // (a)
    if (!(Rational(0) <= V.theta && V.theta <= Rational(1, 2))) return nullptr;  // (b)
    if (!(V.Q.s0 <= rational_min(V.Q.s1, V.Q.s2))) return nullptr;            // (c)
    if (!(V.Q.s1 + V.Q.s2 >= Rational(0))) return nullptr;                    // (d)
    const Rational margin = V.Q.s1 + V.Q.s2 - V.Q.s0 - V.n_theta;
    if (!(margin >= Rational(0))) return nullptr;                             // (e)
    if (V.theta > Rational(0)) {                                              // (f)
        if ((V.Q.s1 == V.n_theta || V.Q.s2 == V.n_theta || -V.Q.s0 == V.n_theta) &&
            !(margin > Rational(0))) {
            return nullptr;
        }
    }
    return &kToftSufficient;
}

// -- necessary conditions; a violation is a proof of failure ------------------

template <typename Push>
inline void check_same_q_necessity(const QueryView& V, Push push) {
    if (!(V.rq1 == V.rq && V.rq2 == V.rq)) return;
    if (V.Q.s0 > rational_min(V.Q.s1, V.Q.s2)) push(&kNecessaryOrder);
    if (V.Q.s1 + V.Q.s2 < Rational(0)) push(&kNecessarySum);
    if (V.Q.s1 + V.Q.s2 - V.Q.s0 < V.n_over_q_conj()) push(&kNecessaryGap);
}

// Multiplier necessity: when one factor space equals the target space (same
// s, same p < inf, shared finite q), the other factor must embed into L_inf.
template <typename Push>
inline void check_multiplier_necessity(const QueryView& V, Push push) {
    if (!(V.rq1 == V.rq && V.rq2 == V.rq && V.rq > Rational(0))) return;
    const bool q_is_one = V.rq == Rational(1);
    const auto fails_linfty = [&](const Rational& s_other) {
        if (q_is_one) return !(s_other >= Rational(0));
        return !(s_other > V.n_over_q_conj());
    };
    if (V.rp2 == V.rp && V.rp > Rational(0) && V.Q.s2 == V.Q.s0 && fails_linfty(V.Q.s1)) {
        push(&kMultiplier2);
    }
    if (V.rp1 == V.rp && V.rp > Rational(0) && V.Q.s1 == V.Q.s0 && fails_linfty(V.Q.s2)) {
        push(&kMultiplier1);
    }
}

template <typename Push>
inline void check_zero_weight_necessity(const QueryView& V, Push push) {
    if (!(V.Q.s0 == Rational(0) && V.Q.s1 == Rational(0) && V.Q.s2 == Rational(0))) return;
    if (!V.p_ok) push(&kZeroWeightP);
    if (Rational(1) + V.rq > V.rq1 + V.rq2) push(&kZeroWeightQ);
}

template <typename Push>
inline void check_general_necessity(const QueryView& V, Push push) {
    if (V.Q.s0 > rational_min(V.Q.s1, V.Q.s2)) push(&kToftOrder);
    if (V.Q.s1 + V.Q.s2 < Rational(0)) push(&kToftSum);
    if (V.Q.s1 + V.Q.s2 - V.Q.s0 < V.n_theta) push(&kToftGap);
}

// Coincident factor/target spaces fall under the algebra iff.
template <typename Push>
inline void check_algebra_necessity(const QueryView& V, Push push) {
    if (!(V.Q.s1 == V.Q.s0 && V.Q.s2 == V.Q.s0 && V.rp1 == V.rp && V.rp2 == V.rp &&
          V.rq1 == V.rq && V.rq2 == V.rq)) {
        return;
    }
    const bool q_one = V.rq == Rational(1);
    const bool holds = (q_one && V.Q.s0 >= Rational(0)) || V.Q.s0 > V.n_over_q_conj();
    if (!holds) push(&kAlgebraNecessity);
}

struct ProductEvaluation {
    std::array<const RuleDef*, 10> fired{};
    std::array<const RuleDef*, 12> violated{};
    int fired_count = 0;
    int violated_count = 0;
};

inline ProductEvaluation evaluate_product(const ProductQuery& Q) {
    if (Q.dim < 1 || Q.dim > 2) throw std::invalid_argument("product_verdict: dimension must be 1 or 2");
    const QueryView V(Q);
    ProductEvaluation e;
    const auto fire = [&e](const RuleDef* d) {
        if (d != nullptr) e.fired[e.fired_count++] = d;
    };
    fire(rule_weighted_product(V));
    fire(rule_l1_factors(V));
    fire(rule_dual_weight(V, false));
    fire(rule_dual_weight(V, true));
    fire(rule_smoothed_product(V, false));
    fire(rule_smoothed_product(V, true));
    fire(rule_zero_weight(V));
    fire(rule_balanced_negative(V));
    fire(rule_balanced_positive(V));
    fire(rule_toft_sufficient(V));

    const auto violate = [&e](const RuleDef* d) { e.violated[e.violated_count++] = d; };
    check_same_q_necessity(V, violate);
    check_multiplier_necessity(V, violate);
    check_zero_weight_necessity(V, violate);
    check_general_necessity(V, violate);
    check_algebra_necessity(V, violate);

    if (e.fired_count > 0 && e.violated_count > 0) {
        throw RuleContradiction(std::string("product rules: '") + e.fired[0]->id +
                                "' fired while '" + e.violated[0]->id + "' is violated");
    }
    return e;
}

}  // namespace detail

// Decides M^{s1}_{p1,q1} . M^{s2}_{p2,q2} -> M^{s0}_{p,q}. Holds when a
// sufficient rule fires, Fails when a necessary condition is violated,
// Unknown in the gap between the two rule sets.
inline Verdict product_verdict(const ProductQuery& Q) {
    const detail::ProductEvaluation e = detail::evaluate_product(Q);
    Verdict v;
    if (e.fired_count > 0) {
        v.status = Status::holds;
        for (int i = 0; i < e.fired_count; ++i) {
            v.rules.push_back({e.fired[i]->id, e.fired[i]->statement});
        }
    } else if (e.violated_count > 0) {
        v.status = Status::fails;
        for (int i = 0; i < e.violated_count; ++i) {
            v.rules.push_back({e.violated[i]->id, e.violated[i]->statement});
        }
    } else {
        v.status = Status::unknown;
        v.rules.push_back({detail::kGap.id, detail::kGap.statement});
    }
    return v;
}

// Status-only variant for exhaustive scans: same rule engine, same
// contradiction oracle, no report construction.
inline Status product_status(const ProductQuery& Q) {
    const detail::ProductEvaluation e = detail::evaluate_product(Q);
    if (e.fired_count > 0) return Status::holds;
    if (e.violated_count > 0) return Status::fails;
    return Status::unknown;
}

// --- composition calculators --------------------------------------------------

// t_m(s) = s + (m-1)(s - n/q'): the best reachable regularity for g^m when
// 0 < s <= n/q'.
inline Rational t_m(const Rational& s, int m, const ExtendedExponent& q, int n) {
    if (m < 2) throw std::invalid_argument("t_m: m must be >= 2");
    return s + Rational(m - 1) * (s - n_over_conj(q, n));
}

struct SuperpositionExponent {
    Rational growth;   // (s + n/q)(1 + 1/(s - n/q'))
    Rational measure;  // 1 + growth
};

inline SuperpositionExponent superposition_exponent(const Rational& s, const ExtendedExponent& q,
                                                    int n) {
    const Rational gap = s - n_over_conj(q, n);
    if (!(gap > Rational(0))) {
        throw std::domain_error("superposition exponent undefined: needs s > n/q'");
    }
    const Rational growth = (s + n_over(q, n)) * (Rational(1) + Rational(1) / gap);
    return {growth, Rational(1) + growth};
}

// Smoothness threshold on f (Besov scale on the line) that makes T_f bounded.
inline Rational besov_threshold(const Rational& s, const ExtendedExponent& q, int n) {
    return Rational(3, 2) + superposition_exponent(s, q, n).growth;
}

// Applicability of the power-composition rule for u |u|^alpha: requires the
// growth exponent strictly below alpha.
inline Verdict power_alpha_ok(const Rational& alpha, const Rational& s, const ExtendedExponent& q,
                              int n) {
    const Rational growth = superposition_exponent(s, q, n).growth;
    Verdict v;
    if (growth < alpha) {
        v.status = Status::holds;
        v.rules.push_back({"power-composition", "(s + n/q)(1 + 1/(s - n/q')) < alpha"});
    } else {
        v.status = Status::fails;
        v.rules.push_back({"power-composition", "needs strict (s + n/q)(1 + 1/(s - n/q')) < alpha"});
    }
    return v;
}

}  // namespace modspace
