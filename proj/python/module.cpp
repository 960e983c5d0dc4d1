#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twistloop/families.hpp"
#include "twistloop/invariants.hpp"
#include "twistloop/json_io.hpp"
#include "twistloop/oracle.hpp"
#include "twistloop/presentation.hpp"

namespace py = pybind11;
using namespace twistloop;

namespace {

LoopFamily make_family(const std::string& family, int i, double eps) {
    if (family == "t") return family_T(i, eps);
    if (family == "tbar") return family_Tbar(i, eps);
    if (family == "spin") return spin_loop(i, eps);
    throw py::value_error("family must be one of: t, tbar, spin");
}

std::string int_str(const Int& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

IntMatrix to_matrix(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m;
    for (const auto& r : rows) {
        m.emplace_back();
        for (long long v : r) m.back().emplace_back(v);
    }
    return m;
}

} // namespace

PYBIND11_MODULE(_twistloop, m) {
    m.doc() = "Invariants of loops of embedded circles in S1 x S3";

    m.def(
        "invariants_json",
        [](const std::string& family, int i, int grid, double eps) {
            const LoopFamily f = make_family(family, i, eps);
            SolverConfig cfg;
            cfg.nt = cfg.nz = grid;
            return report_to_json(compute_invariants(f, cfg), f.eps());
        },
        py::arg("family"), py::arg("i"), py::arg("grid") = 64,
        py::arg("eps") = kDefaultEps,
        "Full certified invariant report as a JSON string.");

    m.def(
        "w1",
        [](const std::string& family, int i, double eps) {
            return compute_w1(make_family(family, i, eps));
        },
        py::arg("family"), py::arg("i"), py::arg("eps") = kDefaultEps,
        "Winding number of the basepoint trace.");

    m.def(
        "w2_terms",
        [](const std::string& family, int i, int grid, double eps) {
            const LoopFamily f = make_family(family, i, eps);
            SolverConfig cfg;
            cfg.nt = cfg.nz = grid;
            const InvariantReport rep = compute_invariants(f, cfg);
            std::vector<std::pair<std::int64_t, std::string>> out;
            for (const auto& [e, c] : rep.w2.coeffs)
                out.emplace_back(e, int_str(c));
            return out;
        },
        py::arg("family"), py::arg("i"), py::arg("grid") = 64,
        py::arg("eps") = kDefaultEps,
        "W2 as (exponent, coefficient-string) pairs, ascending exponents.");

    m.def(
        "lambda0_reduce",
        [](const std::vector<std::pair<std::int64_t, long long>>& terms) {
            LaurentPoly p;
            for (const auto& [e, c] : terms)
                p = laurent_add(p, LaurentPoly::monomial(e, Int(c)));
            const Lambda0Element r = twistloop::lambda0_reduce(p);
            std::vector<std::pair<std::int64_t, std::string>> out;
            for (const auto& [e, c] : r.coeffs) out.emplace_back(e, int_str(c));
            return out;
        },
        py::arg("terms"),
        "Reduce a Laurent polynomial into the quotient group Lambda0.");

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<long long>>& rows) {
            const SNFResult s = twistloop::smith_normal_form(to_matrix(rows));
            py::dict out;
            auto dump = [](const IntMatrix& m) {
                std::vector<std::vector<std::string>> o;
                for (const auto& r : m) {
                    o.emplace_back();
                    for (const auto& v : r) {
                        std::ostringstream os;
                        os << v;
                        o.back().push_back(os.str());
                    }
                }
                return o;
            };
            out["D"] = dump(s.D);
            out["U"] = dump(s.U);
            out["V"] = dump(s.V);
            std::vector<std::string> factors;
            for (const auto& d : s.invariant_factors)
                factors.push_back(int_str(d));
            out["invariant_factors"] = factors;
            out["free_rank"] = s.free_rank;
            return out;
        },
        py::arg("relations"),
        "Certified Smith normal form of an integer relation matrix.");

    m.def(
        "m0_verdict",
        [](const std::vector<long long>& n, const std::vector<int>& signs) {
            std::vector<Int> ni;
            for (long long v : n) ni.emplace_back(v);
            return conclude_theorem(build_M0_presentation(ni, signs));
        },
        py::arg("n"), py::arg("signs"),
        "Verdict string for the twist-group presentation.");
}
