#pragma once

#include "charp/field.hpp"
#include "charp/filtration.hpp"
#include "charp/fsing.hpp"
#include "charp/jet.hpp"
#include "charp/poly.hpp"
#include "json.hpp"

namespace charp {

using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;

Json to_json(const Ring& ring);
/// Inverse of to_json(Ring); throws InputError on malformed data.
RingPtr ring_from_json(const Json& j);

Json to_json(const Monomial& m, std::size_t nvars);
Monomial monomial_from_json(const Json& j, std::size_t nvars);
Json to_json(const MonomialIdeal& I, const VarSet& vars);
MonomialIdeal monomial_ideal_from_json(const Json& j, std::size_t nvars);

Json to_json(const SplitCertificate& cert);
SplitCertificate split_certificate_from_json(const Json& j);

Json to_json(const TightClosureCertificate& cert);
Json to_json(const WitnessSpec& spec, const WitnessCoefficient& w, const VarSet& vars);
Json to_json(const BinomialUnitReport& rep);
Json to_json(const QuadraticJetForm& form);
Json to_json(const ClassifierReport& rep);
Json to_json(const JacobianReport& rep);

Json to_json(const NewtonPolyhedron& poly);
Json to_json(const FiltrationTable& table, const VarSet& vars);
Json to_json(const ReductionReport& rep, const VarSet& vars);
Json to_json(const HilbertData& h);
Json to_json(const AInvariantCheck& c, const VarSet& vars);
Json to_json(const VvCheck& c, const VarSet& vars);

/// Standard variable names x0, x1, ... for monomial data without a ring.
VarSet default_vars(std::size_t n);

}  // namespace charp
