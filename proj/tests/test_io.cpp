#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "modspace/io.hpp"
#include "modspace/testbed.hpp"

using namespace modspace;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("modspace_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sample tables round-trip in both encodings") {
    const GridSpec g(1, 2, 64);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    SampledFunction f(g);
    for (auto& v : f.values) v = cplx{dist(rng), dist(rng)};

    for (const std::string enc : {"text", "binary64"}) {
        TempFile tmp("samples_" + enc + ".dat");
        write_samples(tmp.path, f, enc);
        const SampledFunction back = read_samples(tmp.path);
        CHECK(back.grid == f.grid);
        double err = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            err = std::max(err, std::abs(back.values[i] - f.values[i]));
        }
        CHECK(err == 0.0);  // 17 significant digits round-trip doubles exactly
    }

    CHECK_THROWS(read_samples("no_such_file.dat"));
}

TEST_CASE("two-dimensional sample tables round-trip") {
    const GridSpec g(2, 2, 16);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    SampledFunction f(g);
    for (auto& v : f.values) v = cplx{dist(rng), dist(rng)};
    TempFile tmp("samples_2d.dat");
    write_samples(tmp.path, f, "binary64");
    const SampledFunction back = read_samples(tmp.path);
    CHECK(back.grid == f.grid);
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        err = std::max(err, std::abs(back.values[i] - f.values[i]));
    }
    CHECK(err == 0.0);
}

TEST_CASE("verdict and norm report serialization") {
    const SpaceParams params(Rational(1, 2), ExtendedExponent(Rational(4, 3)),
                             ExtendedExponent::infinity(), 1);
    Verdict v;
    v.status = Status::holds;
    v.rules.push_back({"algebra-iff", "s > n/q'"});
    const json jv = to_json(v);
    CHECK(jv.at("status") == "holds");
    CHECK(jv.at("rules")[0].at("id") == "algebra-iff");

    NormReport rep;
    rep.value = 2.5;
    rep.params = params;
    rep.method = "decomposition";
    rep.contributions = {{{0, 0}, 2.5}};
    const json jr = to_json(rep, true);
    CHECK(jr.at("value") == 2.5);
    CHECK(jr.at("params").at("p") == "4/3");
    CHECK(jr.at("params").at("q") == "inf");
    CHECK(jr.at("contributions").size() == 1);
}

TEST_CASE("csv output is RFC-4180 with quoting and CRLF") {
    ExperimentRecord rec;
    rec.experiment = "demo, with comma";
    rec.family = "quote\"inside";
    rec.inputs = {{"x", 1.0}};
    rec.measured = {{"y", 2.0}};
    const std::string csv = records_to_csv({rec});
    CHECK(csv.find("\"demo, with comma\"") != std::string::npos);
    CHECK(csv.find("\"quote\"\"inside\"") != std::string::npos);
    CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("record documents are bit-identical across reruns") {
    const auto build = []() {
        std::vector<ExperimentRecord> records;
        for (int i = 0; i < 3; ++i) {
            ExperimentRecord r;
            r.experiment = "determinism";
            r.inputs = {{"i", static_cast<double>(i)}};
            r.measured = {{"v", std::sqrt(2.0) * i / 3.0}};
            records.push_back(std::move(r));
        }
        return records;
    };
    const json manifest{{"experiment", "determinism"}, {"seed", 7}};
    json a = records_document(manifest, build(), 12.5);
    json b = records_document(manifest, build(), 99.0);
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
}
