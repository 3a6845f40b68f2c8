#pragma once

#include <string>

#include "json.hpp"

#include "gfusion/constructions.hpp"
#include "gfusion/fourier.hpp"
#include "gfusion/frames.hpp"
#include "gfusion/pair_resolution.hpp"

namespace gfusion::io {

using Json = nlohmann::json;

/// Finite doubles stay numbers; infinities and NaN become "inf", "-inf", "nan".
Json number(double x);
double read_number(const Json& j, const char* what);

Json to_json(const Operator& a);
Json to_json(const Subspace& s);
Json to_json(const FrameFamily& fam);
Json to_json(const ControlPair& cp);
Json to_json(const SpectralInterval& s);
Json to_json(const FrameReport& r);
Json to_json(const KgfBounds& k);
Json to_json(const AtomicReport& r);
Json to_json(const TransformReport& r);
Json to_json(const PairOperator& p);
Json to_json(const ResolutionReport& r);
Json to_json(const CanonicalResolutions& c);
Json to_json(const InverseResolutionReport& r);
Json to_json(const ResolutionFrameReport& r);
Json to_json(const CoercivePairReport& r);
Json to_json(const PerturbationReport& r);
Json to_json(const FourierReport& r);

Operator operator_from_json(const Json& j);
Subspace subspace_from_json(const Json& j, const Tolerances& tol = {});
/// Accepts a family object or any report embedding one under "family".
FrameFamily family_from_json(const Json& j, const Tolerances& tol = {});
/// Accepts {"t", "u"} or an object embedding one under "control".
ControlPair control_from_json(const Json& j, const Tolerances& tol = {});
/// Accepts an operator object or an object embedding one under "k".
Operator k_from_json(const Json& j);

/// Reads and parses a file; syntax errors become ParseError with the byte
/// offset in the message.
Json read_file(const std::string& path);
Json parse_text(const std::string& text, const std::string& origin);
/// Deterministic serialization (sorted keys, two-space indent, trailing newline).
std::string dump(const Json& j);

}  // namespace gfusion::io
