#include "tsq/serialize.hpp"

namespace tsq {

std::string dec(const mpz_class& v) { return v.get_str(); }

json rat(const mpq_class& v) {
    return json{{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

json to_json(const Factorization& f) {
    json arr = json::array();
    for (const auto& [p, e] : f.factors)
        arr.push_back(json{{"prime", std::to_string(p)},
                           {"exponent", std::to_string(e)}});
    return arr;
}

json to_json(const ResidueVec4& v) {
    json arr = json::array();
    for (u64 c : v.coords) arr.push_back(std::to_string(c));
    return json{{"coords", arr}, {"modulus", std::to_string(v.modulus)}};
}

json to_json(const BucketTable& t) {
    json entries = json::array();
    for (const auto& [key, count] : t.entries) {
        json k = json::array();
        for (u64 c : key) k.push_back(std::to_string(c));
        entries.push_back(json{{"key", k}, {"count", std::to_string(count)}});
    }
    return json{{"modulus", std::to_string(t.modulus)},
                {"total", dec(t.total)},
                {"entries", entries}};
}

json to_json(const ReducedForm& f) {
    return json::array({std::to_string(f.a), std::to_string(f.b), std::to_string(f.c)});
}

json to_json(const GaussReport& r) {
    return json{{"n", dec(r.n)},          {"case", std::to_string(r.case_id)},
                {"relation", r.relation}, {"lhs", dec(r.lhs)},
                {"rhs", dec(r.rhs)},      {"pass", r.pass}};
}

json to_json(const CongruenceSolution& s) {
    json y = json::array();
    for (u64 r : s.y.residues()) y.push_back(std::to_string(r));
    return json{{"y", y},
                {"modulus", std::to_string(s.modulus)},
                {"Q", dec(s.Q)}};
}

json to_json(const ReductionCertificate& c) {
    return json{{"a_in", std::to_string(c.a_in)},
                {"m_in", std::to_string(c.m_in)},
                {"a_prime", std::to_string(c.a_prime)},
                {"d_scale", std::to_string(c.d_scale)},
                {"t", dec(c.t)},
                {"M", dec(c.M)},
                {"case_tag", to_string(c.tag)},
                {"advisory_large_modulus", c.advisory_large_modulus}};
}

json to_json(const ChowlaWitness& w) {
    json primes = json::array();
    for (u64 p : w.primes) primes.push_back(std::to_string(p));
    auto xr = w.x_star.residues();
    auto yr = w.y.y.residues();
    json j{{"a", std::to_string(w.a)},
           {"m", std::to_string(w.m)},
           {"z", std::to_string(w.z)},
           {"skip_reduction", w.skip_reduction},
           {"cert_a_in", std::to_string(w.certificate.a_in)},
           {"cert_m_in", std::to_string(w.certificate.m_in)},
           {"cert_a_prime", std::to_string(w.certificate.a_prime)},
           {"cert_d_scale", std::to_string(w.certificate.d_scale)},
           {"cert_t", dec(w.certificate.t)},
           {"cert_M", dec(w.certificate.M)},
           {"cert_case_tag", to_string(w.certificate.tag)},
           {"cert_advisory_large_modulus", w.certificate.advisory_large_modulus},
           {"primes", primes},
           {"N1", dec(w.N1)},
           {"d_inv", std::to_string(w.d_inv)},
           {"N", dec(w.N)},
           {"r4N", dec(w.r4N)},
           {"x_star_1", std::to_string(xr[0])},
           {"x_star_2", std::to_string(xr[1])},
           {"x_star_3", std::to_string(xr[2])},
           {"x_star_4", std::to_string(xr[3])},
           {"bucket_count", std::to_string(w.bucket_count)},
           {"y_1", std::to_string(yr[0])},
           {"y_2", std::to_string(yr[1])},
           {"y_3", std::to_string(yr[2])},
           {"y_4", std::to_string(yr[3])},
           {"Q", dec(w.Q)},
           {"K", dec(w.K)},
           {"k_star", dec(w.k_star)},
           {"n_local", dec(w.n_local)},
           {"certified_count", dec(w.certified_count)},
           {"pigeonhole_bound", dec(w.pigeonhole_bound)},
           {"n_final", dec(w.n_final)},
           {"euler_product_num", w.euler_product.get_num().get_str()},
           {"euler_product_den", w.euler_product.get_den().get_str()},
           {"degenerate_primes", w.degenerate_primes}};
    j["r3_exact"] = w.r3_exact ? json(dec(*w.r3_exact)) : json(nullptr);
    return j;
}

json to_json(const HurwitzWitness& h) {
    json j = to_json(h.witness);
    j["b"] = std::to_string(h.b);
    j["modulus_used"] = std::to_string(h.modulus_used);
    j["h_bound_num"] = h.h_bound.get_num().get_str();
    j["h_bound_den"] = h.h_bound.get_den().get_str();
    j["final_case"] = std::to_string(h.final_case);
    return j;
}

json to_json(const LowerBoundReport& r) {
    return json{{"certified_count", dec(r.certified_count)},
                {"pigeonhole_bound", dec(r.pigeonhole_bound)},
                {"K", dec(r.K)},
                {"paper_form_bound", r.paper_form_bound},
                {"r4N_over_8N", rat(r.r4N_over_8N)},
                {"euler_product", rat(r.euler_product)},
                {"certified_over_sqrt_n", r.certified_over_sqrt_n},
                {"degenerate_primes", r.degenerate_primes}};
}

} // namespace tsq
