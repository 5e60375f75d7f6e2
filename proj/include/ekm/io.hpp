#ifndef EKM_IO_HPP
#define EKM_IO_HPP

/* Setup files and machine-readable records.
 *
 * Setup format (JSON):
 *   {
 *     "d0": 0, "dinf": 0,
 *     "factors": [ {"dim": 1, "x": "1/2", "s": 2, "p": 2, "q": 1}, ... ]
 *   }
 * Rationals are "num/den" strings or plain integers; "p"/"q" are optional
 * integrality data. Serialization round-trips bit-exactly.
 */

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "ekm/classify.hpp"
#include "ekm/errors.hpp"
#include "ekm/rational.hpp"
#include "ekm/setup.hpp"
#include "ekm/stability.hpp"

namespace ekm {

using json = nlohmann::ordered_json;

inline Rational rational_from_json(const json& j, const std::string& key) {
    std::optional<Rational> r;
    if (j.is_number_integer()) r = Rational(static_cast<long>(j.get<long long>()));
    else if (j.is_string()) r = Rational::parse(j.get<std::string>());
    if (!r) throw ParseError("field '" + key + "' is not a rational (integer or \"num/den\")");
    return *r;
}

inline json rational_to_json(const Rational& r) {
    if (r.is_integer() && r.num().fits_slong_p()) return json(r.num().get_si());
    return json(r.to_string());
}

inline AdmissibleSetup setup_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("setup must be a JSON object");
    AdmissibleSetup s;
    s.d0 = j.value("d0", 0);
    s.dinf = j.value("dinf", 0);
    if (j.contains("factors")) {
        if (!j["factors"].is_array()) throw ParseError("'factors' must be an array");
        for (const auto& jf : j["factors"]) {
            FactorDatum f;
            f.dim = jf.value("dim", 1);
            if (!jf.contains("x") || !jf.contains("s"))
                throw ParseError("factor needs 'x' and 's'");
            f.x = rational_from_json(jf["x"], "x");
            f.s = rational_from_json(jf["s"], "s");
            if (jf.contains("p") != jf.contains("q"))
                throw ParseError("integrality data needs both 'p' and 'q'");
            if (jf.contains("p")) {
                IntegralityDatum d;
                d.p = rational_from_json(jf["p"], "p");
                if (!jf["q"].is_number_integer()) throw ParseError("'q' must be an integer");
                d.q = jf["q"].get<long>();
                f.integrality = d;
            }
            s.factors.push_back(std::move(f));
        }
    }
    return s;
}

inline json setup_to_json(const AdmissibleSetup& s) {
    json j;
    j["d0"] = s.d0;
    j["dinf"] = s.dinf;
    j["factors"] = json::array();
    for (const auto& f : s.factors) {
        json jf;
        jf["dim"] = f.dim;
        jf["x"] = rational_to_json(f.x);
        jf["s"] = rational_to_json(f.s);
        if (f.integrality) {
            jf["p"] = rational_to_json(f.integrality->p);
            jf["q"] = f.integrality->q;
        }
        j["factors"].push_back(jf);
    }
    return j;
}

inline AdmissibleSetup load_setup(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open setup file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("setup file is not valid JSON: " + std::string(e.what()));
    }
    return setup_from_json(j);
}

inline json poly_to_json(const RatPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coefficients()) arr.push_back(rational_to_json(c));
    return arr;
}

inline json witness_to_json(const RootWitness& w) {
    json arr = json::array();
    for (const auto& iv : w.intervals) {
        json j;
        j["lo"] = rational_to_json(iv.lo);
        j["hi"] = rational_to_json(iv.hi);
        j["parity"] = iv.multiplicity_parity == Parity::Even ? "even" : "odd";
        arr.push_back(j);
    }
    return arr;
}

inline json verdict_to_json(const Verdict& v) {
    json j;
    j["kind"] = to_string(v.kind);
    j["A"] = rational_to_json(v.solution.A);
    j["B"] = rational_to_json(v.solution.B);
    j["futaki"] = rational_to_json(v.solution.futaki);
    j["F"] = poly_to_json(v.solution.F);
    j["quotient"] = poly_to_json(v.quotient);
    j["witness"] = witness_to_json(v.witness);
    j["root_count"] = v.witness.count;
    return j;
}

inline json stability_report_to_json(const StabilityReport& r) {
    json j;
    j["z"] = rational_to_json(r.z);
    j["futaki_alpha"] = rational_to_json(r.futaki_alpha);
    j["futaki_beta"] = rational_to_json(r.futaki_beta);
    j["ip_ab"] = rational_to_json(r.ip_ab);
    j["ip_bb"] = rational_to_json(r.ip_bb);
    j["modified"] = rational_to_json(r.modified);
    return j;
}

} // namespace ekm

#endif
