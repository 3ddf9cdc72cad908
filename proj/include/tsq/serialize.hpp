#ifndef TSQ_SERIALIZE_HPP
#define TSQ_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "tsq/chowla.hpp"
#include "tsq/classnum.hpp"

// JSON views of the domain records. Every integer is emitted as a decimal
// string so no consumer loses precision; field names are part of the
// external contract and stay stable.

namespace tsq {

using json = nlohmann::json;

std::string dec(const mpz_class& v);
json rat(const mpq_class& v); // {"num": ..., "den": ...}

json to_json(const Factorization& f);
json to_json(const ResidueVec4& v);
json to_json(const BucketTable& t);
json to_json(const ReducedForm& f);
json to_json(const GaussReport& r);
json to_json(const CongruenceSolution& s);
json to_json(const ReductionCertificate& c);
json to_json(const ChowlaWitness& w); // flat record, stable field names
json to_json(const HurwitzWitness& h);
json to_json(const LowerBoundReport& r);

} // namespace tsq

#endif
