#include "twistloop/json_io.hpp"

#include <json.hpp>
#include <sstream>

namespace twistloop {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string int_str(const Int& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

ordered_json lambda0_json(const Lambda0Element& e) {
    ordered_json terms = ordered_json::array();
    for (const auto& [exp, coef] : e.coeffs) {
        ordered_json t;
        t["exp"] = exp;
        t["coef"] = int_str(coef);
        terms.push_back(t);
    }
    ordered_json out;
    out["terms"] = terms;
    return out;
}

} // namespace

std::string lambda0_to_json(const Lambda0Element& e) {
    return lambda0_json(e).dump(2);
}

std::string report_to_json(const InvariantReport& rep, double eps) {
    ordered_json j;
    j["family"] = rep.family;
    j["i"] = rep.param;
    j["w1"] = rep.w1;
    j["w2"] = lambda0_json(rep.w2);
    ordered_json classes = ordered_json::array();
    for (const auto& ic : rep.classes) {
        ordered_json c;
        c["t"] = ic.point.t;
        c["z1"] = ic.point.z1;
        c["z2"] = ic.point.z2;
        c["sign"] = ic.point.sign;
        c["k"] = ic.trace.k;
        c["residual"] = ic.point.residual;
        c["det_mag"] = ic.point.det_mag;
        classes.push_back(c);
    }
    j["classes"] = classes;
    ordered_json cert;
    cert["min_det_mag"] = rep.min_det_mag;
    cert["max_residual"] = rep.max_residual;
    cert["grid"] = {rep.config.nt, rep.config.nz, rep.config.nz};
    cert["slice_angle"] = rep.slice_angle;
    cert["orientation"] = "sigma=+1";
    cert["eps"] = eps;
    cert["seed"] = rep.config.seed;
    j["certification"] = cert;
    return j.dump(2);
}

std::string snf_to_json(const SNFResult& s) {
    ordered_json j;
    ordered_json factors = ordered_json::array();
    for (const auto& d : s.invariant_factors) factors.push_back(int_str(d));
    j["invariant_factors"] = factors;
    j["free_rank"] = s.free_rank;
    return j.dump(2);
}

} // namespace twistloop
