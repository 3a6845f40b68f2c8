#include "gfusion/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace gfusion::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object containing '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

Index read_index(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) bad(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0) bad(std::string(what) + " must be non-negative");
  return static_cast<Index>(v);
}

Json certificates(const std::vector<Certificate>& cs) {
  Json arr = Json::array();
  for (const Certificate& c : cs) arr.push_back({{"name", c.name}, {"residual", number(c.residual)}, {"passed", c.passed}});
  return arr;
}

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double read_number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  bad(std::string(what) + " must be a number");
}

Json to_json(const Operator& a) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index k = 0; k < a.cols(); ++k) {
      re.push_back(number(a(i, k).real()));
      im.push_back(number(a(i, k).imag()));
    }
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}, {"im", im}};
}

Operator operator_from_json(const Json& j) {
  const Index rows = read_index(field(j, "rows"), "rows");
  const Index cols = read_index(field(j, "cols"), "cols");
  const Json& re = field(j, "re");
  if (!re.is_array() || re.size() != static_cast<std::size_t>(rows * cols)) {
    bad("'re' must be an array of rows*cols numbers");
  }
  const Json* im = nullptr;
  if (auto it = j.find("im"); it != j.end()) {
    im = &*it;
    if (!im->is_array() || im->size() != re.size()) bad("'im' must match 're' in length");
  }
  Operator a(rows, cols);
  std::size_t p = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k, ++p) {
      const double x = read_number(re[p], "matrix entry");
      const double y = im ? read_number((*im)[p], "matrix entry") : 0.0;
      if (!std::isfinite(x) || !std::isfinite(y)) throw Error(ErrorKind::InvalidValue, "matrix entries must be finite");
      a(i, k) = {x, y};
    }
  }
  return a;
}

Json to_json(const Subspace& s) { return {{"ambient_dim", s.ambient_dim()}, {"basis", to_json(s.basis())}}; }

Subspace subspace_from_json(const Json& j, const Tolerances& tol) {
  const Index n = read_index(field(j, "ambient_dim"), "ambient_dim");
  Operator basis = operator_from_json(field(j, "basis"));
  if (basis.cols() == 0) return Subspace::zero(n);
  if (basis.rows() != n) throw Error(ErrorKind::DimensionMismatch, "subspace basis rows differ from ambient_dim");
  return Subspace(n, std::move(basis), tol);
}

Json to_json(const FrameFamily& fam) {
  Json items = Json::array();
  for (const FrameItem& it : fam.items()) {
    items.push_back({{"subspace", to_json(it.subspace)}, {"lambda", to_json(it.lambda)}, {"weight", number(it.weight)}});
  }
  return {{"ambient_dim", fam.ambient_dim()}, {"items", items}};
}

FrameFamily family_from_json(const Json& j, const Tolerances& tol) {
  if (j.is_object() && !j.contains("ambient_dim") && j.contains("family")) return family_from_json(j["family"], tol);
  const Index n = read_index(field(j, "ambient_dim"), "ambient_dim");
  const Json& arr = field(j, "items");
  if (!arr.is_array()) bad("'items' must be an array");
  std::vector<FrameItem> items;
  for (const Json& it : arr) {
    items.push_back({subspace_from_json(field(it, "subspace"), tol), operator_from_json(field(it, "lambda")),
                     read_number(field(it, "weight"), "weight")});
  }
  return FrameFamily(n, std::move(items));
}

Json to_json(const ControlPair& cp) { return {{"t", to_json(cp.t())}, {"u", to_json(cp.u())}}; }

ControlPair control_from_json(const Json& j, const Tolerances& tol) {
  if (j.is_object() && !(j.contains("t") && j.contains("u")) && j.contains("control")) return control_from_json(j["control"], tol);
  return ControlPair(operator_from_json(field(j, "t")), operator_from_json(field(j, "u")), tol);
}

Operator k_from_json(const Json& j) {
  if (j.is_object() && !j.contains("rows") && j.contains("k")) return operator_from_json(j["k"]);
  return operator_from_json(j);
}

Json to_json(const SpectralInterval& s) {
  return {{"lambda_min", number(s.lambda_min)}, {"lambda_max", number(s.lambda_max)}};
}

Json to_json(const FrameReport& r) {
  return {{"is_bessel", r.is_bessel},
          {"is_frame", r.is_frame},
          {"bounds", to_json(r.bounds)},
          {"herm_residual", number(r.herm_residual)},
          {"s_c", to_json(r.s_c)}};
}

Json to_json(const KgfBounds& k) { return {{"a_opt", number(k.a_opt)}, {"b", number(k.b)}, {"is_kgf", k.is_kgf}}; }

Json to_json(const AtomicReport& r) {
  return {{"is_atomic", r.is_atomic},
          {"bessel_bound", number(r.bessel_bound)},
          {"coefficient_norm_bound", number(r.coefficient_norm_bound)},
          {"lower_bound", number(r.lower_bound)},
          {"coefficient_residual", number(r.coefficient_residual)},
          {"range_contained", r.range_contained},
          {"square_root_form", r.square_root_form},
          {"literal_residual", number(r.literal_residual)},
          {"kgf", to_json(r.kgf)},
          {"coefficient_map", to_json(r.coefficient_map)}};
}

Json to_json(const TransformReport& r) {
  return {{"family", to_json(r.family_out)},
          {"control", to_json(r.control_out)},
          {"k", to_json(r.k_out)},
          {"predicted_lower", number(r.predicted_lower)},
          {"predicted_upper", number(r.predicted_upper)},
          {"measured_lower", number(r.measured_lower)},
          {"measured_upper", number(r.measured_upper)},
          {"measured_is_kgf", r.measured_is_kgf},
          {"hypothesis_certificates", certificates(r.hypothesis_certificates)},
          {"hypotheses_hold", r.hypotheses_hold},
          {"operator_identity_residual", number(r.operator_identity_residual)}};
}

Json to_json(const PairOperator& p) {
  return {{"matrix", to_json(p.matrix)},
          {"left_family", to_json(p.left_family)},
          {"right_family", to_json(p.right_family)},
          {"left_control", to_json(p.left_control)},
          {"right_control", to_json(p.right_control)}};
}

Json to_json(const ResolutionReport& r) {
  return {{"residual", number(r.residual)}, {"term_count", r.term_count}, {"converged", r.converged}};
}

Json to_json(const CanonicalResolutions& c) {
  Json right = Json::array();
  Json left = Json::array();
  for (const Operator& t : c.right_inverse_terms) right.push_back(to_json(t));
  for (const Operator& t : c.left_inverse_terms) left.push_back(to_json(t));
  return {{"right_inverse", to_json(c.right_inverse)},
          {"left_inverse", to_json(c.left_inverse)},
          {"right_inverse_terms", right},
          {"left_inverse_terms", left}};
}

Json to_json(const InverseResolutionReport& r) {
  return {{"resolution", to_json(r.resolution)},
          {"frame_lower", number(r.frame_lower)},
          {"frame_upper", number(r.frame_upper)},
          {"claimed_lower", number(r.claimed_lower)},
          {"claimed_upper", number(r.claimed_upper)},
          {"measured_lower", number(r.measured_lower)},
          {"measured_upper", number(r.measured_upper)},
          {"imaginary_residual", number(r.imaginary_residual)},
          {"commute_t_residual", number(r.commute_t_residual)},
          {"commute_u_residual", number(r.commute_u_residual)},
          {"certified", r.certified},
          {"sandwich_holds", r.sandwich_holds},
          {"modified_sum", to_json(r.modified_sum)}};
}

Json to_json(const ResolutionFrameReport& r) {
  return {{"bessel_bound", number(r.bessel_bound)},
          {"resolution_residual", number(r.resolution_residual)},
          {"measured_lower", number(r.measured_lower)},
          {"measured_upper", number(r.measured_upper)},
          {"predicted_lower", number(r.predicted_lower)},
          {"predicted_upper", number(r.predicted_upper)},
          {"is_frame", r.is_frame},
          {"bounds_hold", r.bounds_hold}};
}

Json to_json(const CoercivePairReport& r) {
  return {{"m", number(r.m)},
          {"right_bessel_bound", number(r.right_bessel_bound)},
          {"predicted_lower", number(r.predicted_lower)},
          {"measured_lower", number(r.measured_lower)},
          {"is_frame", r.is_frame},
          {"bound_holds", r.bound_holds}};
}

Json to_json(const PerturbationReport& r) {
  return {{"spectral_lhs", number(r.spectral_lhs)},
          {"spectral_rhs", number(r.spectral_rhs)},
          {"spectral_certified", r.spectral_certified},
          {"samples", r.samples},
          {"worst_sample_margin", number(r.worst_sample_margin)},
          {"predicted_lower_right", number(r.predicted_lower_right)},
          {"measured_lower_right", number(r.measured_lower_right)},
          {"predicted_lower_left", optional_number(r.predicted_lower_left)},
          {"measured_lower_left", optional_number(r.measured_lower_left)},
          {"bessel_bounds_valid", r.bessel_bounds_valid},
          {"holds", r.holds}};
}

Json to_json(const FourierReport& r) {
  return {{"frame", to_json(r.frame)},
          {"kgf", to_json(r.kgf)},
          {"alpha_beta", number(r.alpha_beta)},
          {"lower_claim_holds", r.lower_claim_holds},
          {"upper_claim_holds", r.upper_claim_holds},
          {"trials", r.trials},
          {"sandwich_violations", r.sandwich_violations},
          {"worst_lower_margin", number(r.worst_lower_margin)},
          {"worst_upper_margin", number(r.worst_upper_margin)},
          {"holds", r.holds}};
}

Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gfusion::io
