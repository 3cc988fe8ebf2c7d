#pragma once

// JSON / CSV emission for reports and certificates. Key order is fixed
// (ordered_json) and every numeric field is an exact integer — big bound
// witnesses are decimal strings — so identical runs produce identical bytes.

#include <json.hpp>

#include <string>

#include "arcsrg/arcs.hpp"
#include "arcsrg/conic.hpp"
#include "arcsrg/cyclo.hpp"
#include "arcsrg/sieve.hpp"
#include "arcsrg/srg.hpp"

namespace arcsrg::io {

using json = nlohmann::ordered_json;

inline json to_json(const srg::AdjacencyObservation& o) {
    return json{{"ran", o.ran},
                {"exhaustive", o.exhaustive},
                {"lambda", o.lambda_obs},
                {"mu", o.mu_obs},
                {"lambda_constant", o.lambda_constant},
                {"mu_constant", o.mu_constant},
                {"pairs_checked", o.pairs_checked},
                {"inverse_closed", o.inverse_closed}};
}

inline json to_json(const srg::SrgCertificate& c) {
    json j;
    j["schema"] = 1;
    j["q"] = c.q;
    j["p"] = c.p;
    j["f"] = c.f;
    j["M"] = c.M;
    j["N"] = c.N;
    j["params"] = {{"v", c.params.v},
                   {"k", c.params.k},
                   {"lambda", c.params.lambda},
                   {"mu", c.params.mu},
                   {"r", c.params.r}};
    j["spectrum"] = json::array();
    for (auto& [v, m] : c.spectrum) j["spectrum"].push_back(json::array({v, m}));
    j["checks"] = {{"tower", c.checks.tower},
                   {"arc", c.checks.arc},
                   {"spectrum_three_valued", c.checks.spectrum_three_valued},
                   {"purity", c.checks.purity},
                   {"identity", c.checks.identity},
                   {"eigenvalues", c.checks.eigenvalues}};
    j["criteria_agree"] = c.criteria_agree;
    j["verdict"] = c.verdict;
    j["method"] = c.method;
    j["failure_stage"] = c.failure_stage;
    j["generator_provenance"] = {{"field_degree", c.field_degree},
                                 {"defining_poly", c.defining_poly},
                                 {"gamma", c.gamma_coords},
                                 {"omega_log", c.omega_log}};
    j["adjacency"] = c.adjacency ? to_json(*c.adjacency) : json(nullptr);
    return j;
}

inline json to_json(const arcs::ArcReport& r) {
    json j;
    j["schema"] = 1;
    j["q"] = r.q;
    j["M"] = r.M;
    j["N"] = r.N;
    j["h"] = r.h;
    j["is_arc"] = r.is_arc;
    j["criteria_agree"] = r.criteria_agree;
    j["criteria"] = {{"determinant", r.criterion_results.at("determinant")},
                     {"cyclotomic_number", r.criterion_results.at("cyclotomic_number")},
                     {"period_spectrum", r.criterion_results.at("period_spectrum")}};
    j["bound_satisfied"] = r.bound_satisfied;
    j["bound"] = {{"ord_M_p", r.bound.d},
                  {"lhs", r.bound.lhs.str()},
                  {"rhs", r.bound.rhs.str()}};
    json counts = json::object();
    for (auto& [s, n] : r.coeff_sq_counts) counts[std::to_string(s)] = n;
    j["coeff_sq_counts"] = counts;
    return j;
}

inline json to_json(const cyclo::PeriodSpectrum& s) {
    json j;
    j["schema"] = 1;
    j["q"] = s.q;
    j["N"] = s.N;
    j["M"] = s.M;
    j["values"] = s.values;
    json groups = json::array();
    for (auto& [v, idx] : s.groups) groups.push_back({{"value", v}, {"indices", idx}});
    j["groups"] = groups;
    j["three_valued"] = s.three_valued;
    j["arc_values"] = s.arc_values;
    j["I1"] = s.I1;
    j["I2"] = s.I2;
    j["I3"] = s.I3;
    return j;
}

inline json to_json(const conic::ConicPartition& P, bool purity_char, bool identity_ok) {
    json j;
    j["schema"] = 1;
    j["q"] = P.q;
    j["M"] = P.M;
    j["N"] = P.N;
    j["d0"] = P.d0;
    j["W_Q"] = P.W;
    j["X_Q"] = P.XQ;
    j["E1"] = P.E1;
    j["E2"] = P.E2;
    j["X1"] = P.X1;
    j["X2"] = P.X2;
    j["pure"] = P.pure;
    j["pure_via_characters"] = purity_char;
    j["purity_routes_agree"] = (P.pure == purity_char);
    j["identity_ok"] = identity_ok;
    return j;
}

inline json to_json(const sieve::PsiRecord& r) {
    return json{{"p", r.p},         {"M", r.M},
                {"h", r.h},         {"eta_values", r.eta_values},
                {"eta2", r.eta2},   {"eta_minus1", r.eta_minus1},
                {"member", r.member}, {"alpha", r.alpha},
                {"beta", r.beta}};
}

/// Summary; densities are exact integer pairs (count, candidates).
inline json to_json(const sieve::SieveResult& s) {
    json j;
    j["schema"] = 1;
    j["M"] = s.M;
    j["h"] = s.h;
    j["alpha"] = s.alpha;
    j["beta"] = s.beta;
    j["bound"] = s.bound;
    j["candidates"] = s.candidates;
    j["member_count"] = s.members.size();
    j["members"] = s.members;
    json cells = json::array();
    if (!s.records.empty()) {
        for (int a : {+1, -1})
            for (int b : {+1, -1}) {
                nt::u64 n = 0;
                for (auto& r : s.records)
                    if (r.member && r.alpha == a && r.beta == b) ++n;
                cells.push_back({{"alpha", a}, {"beta", b}, {"count", n}});
            }
    }
    j["cells"] = cells;
    return j;
}

/// CSV rows: p,M,h,alpha,beta,eta2,eta_minus1,member. alpha/beta are the
/// prime's own classification (0 when the pattern does not close); member
/// marks the requested (alpha, beta) cell.
inline std::string to_csv(const sieve::SieveResult& s) {
    std::string out = "p,M,h,alpha,beta,eta2,eta_minus1,member\n";
    for (auto& r : s.records) {
        bool requested = r.member && r.alpha == s.alpha && r.beta == s.beta;
        out += std::to_string(r.p) + "," + std::to_string(r.M) + "," + std::to_string(r.h) + "," +
               std::to_string(r.alpha) + "," + std::to_string(r.beta) + "," +
               std::to_string(r.eta2) + "," + std::to_string(r.eta_minus1) + "," +
               (requested ? "1" : "0") + "\n";
    }
    return out;
}

inline json to_json(const sieve::RelationOutcome& o) {
    return json{{"applicable", o.applicable}, {"holds", o.holds}, {"instances", o.instances}};
}

inline json to_json(const sieve::RelationsReport& r) {
    json j;
    j["schema"] = 1;
    j["p"] = r.p;
    j["M"] = r.M;
    j["conjugate"] = to_json(r.conjugate);
    j["norm_product"] = to_json(r.norm_product);
    j["orbit_product"] = to_json(r.orbit_product);
    j["half_orbit"] = to_json(r.half_orbit);
    j["quarter_coset"] = to_json(r.quarter_coset);
    j["all_hold"] = r.all_hold;
    return j;
}

inline json to_json(const sieve::ModulusCheck& m) {
    return json{{"modulus", m.modulus},
                {"classes", m.classes},
                {"all_agree", m.all_agree},
                {"counterexamples", m.counterexamples}};
}

inline json to_json(const sieve::CongruenceReport& r) {
    json j;
    j["schema"] = 1;
    j["M"] = r.M;
    j["bound"] = r.bound;
    j["primes_checked"] = r.primes_checked;
    j["established"] = to_json(r.established);
    j["rejected"] = r.rejected ? to_json(*r.rejected) : json(nullptr);
    return j;
}

inline json to_json(const sieve::EmptinessReport& r) {
    json j;
    j["schema"] = 1;
    j["M"] = r.M;
    j["bound"] = r.bound;
    j["ord_2"] = r.two.d;
    j["ord_2_odd"] = r.two.odd;
    j["minus_one_in_two"] = r.two.minus_one_in_two;
    json cells = json::array();
    for (auto& [a, b] : r.predicted_empty) cells.push_back({{"alpha", a}, {"beta", b}});
    j["predicted_empty"] = cells;
    j["candidates_scanned"] = r.candidates_scanned;
    j["violations"] = r.violations;
    j["confirmed"] = r.confirmed;
    return j;
}

} // namespace arcsrg::io
