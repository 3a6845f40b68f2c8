#include "gfusion/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gfusion/constructions.hpp"
#include "gfusion/fourier.hpp"
#include "gfusion/json_io.hpp"
#include "gfusion/pair_resolution.hpp"
#include "gfusion/random_instance.hpp"

namespace gfusion::cli {

namespace {

using io::Json;

struct Options {
  std::vector<std::string> in;
  std::vector<std::string> control;
  std::vector<std::string> k;
  std::vector<std::string> op;
  std::vector<std::string> tol;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out;
  int nmax = 8;
  int m = 3;
  double alpha = 1.0;
  double beta = 1.0;
  int dim = 4;
  int items = 4;
  std::string structure = "generic";
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::optional<double> d1;
  std::optional<double> d2;
  std::optional<double> bessel_bound;
  std::string selector;
  bool wrt_frame_operator = false;
};

struct Outcome {
  Json report;
  bool passed = false;
};

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidParameters:
    case ErrorKind::InvalidValue:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ItemCountMismatch:
    case ErrorKind::WeightMismatch:
    case ErrorKind::SubspaceMismatch:
    case ErrorKind::CodomainMismatch:
      return true;
    default:
      return false;
  }
}

// "path" or "path#/json/pointer".
Json load(const std::string& source) {
  const auto hash = source.find('#');
  const Json doc = io::read_file(source.substr(0, hash));
  if (hash == std::string::npos) return doc;
  try {
    return doc.at(Json::json_pointer(source.substr(hash + 1)));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, "bad JSON pointer in '" + source + "': " + e.what());
  }
}

void need(const std::vector<std::string>& v, std::size_t n, const char* flag) {
  if (v.size() != n) {
    throw Error(ErrorKind::InvalidParameters,
                std::string("expected ") + std::to_string(n) + " " + flag + " argument(s), got " + std::to_string(v.size()));
  }
}

Tolerances tolerances(const Options& o) {
  Tolerances t;
  for (const std::string& kv : o.tol) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidParameters, "--tol expects name=value, got '" + kv + "'");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParameters, "--tol value is not a number in '" + kv + "'");
    }
    if (!t.set(kv.substr(0, eq), value)) {
      throw Error(ErrorKind::InvalidParameters, "unknown or invalid tolerance in '" + kv + "'");
    }
  }
  return t;
}

FrameFamily family_at(const Options& o, std::size_t i, const Tolerances& tol) {
  return io::family_from_json(load(o.in.at(i)), tol);
}

ControlPair control_at(const Options& o, std::size_t i, Index n, const Tolerances& tol) {
  if (i >= o.control.size()) return ControlPair::identity(n);
  ControlPair cp = io::control_from_json(load(o.control[i]), tol);
  if (cp.dim() != n) throw Error(ErrorKind::DimensionMismatch, "control dimension differs from family");
  return cp;
}

Operator k_at(const Options& o, std::size_t i, Index n) {
  if (i >= o.k.size()) return Operator::Identity(n, n);
  return io::k_from_json(load(o.k[i]));
}

Operator op_at(const Options& o, std::size_t i, Index n) {
  if (i >= o.op.size()) return Operator::Identity(n, n);
  Operator a = io::k_from_json(load(o.op[i]));
  if (a.rows() != n || a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "--op operator has the wrong size");
  return a;
}

Outcome check_frame(const Options& o) {
  const Tolerances tol = tolerances(o);
  need(o.in, 1, "--in");
  const FrameFamily fam = family_at(o, 0, tol);
  const ControlPair cp = control_at(o, 0, fam.ambient_dim(), tol);
  const FrameReport rep = controlled_frame_bounds(fam, cp, tol);
  return {{{"family", io::to_json(fam)}, {"control", io::to_json(cp)}, {"frame", io::to_json(rep)}}, rep.is_frame};
}

Outcome bounds(const Options& o) {
  const Tolerances tol = tolerances(o);
  need(o.in, 1, "--in");
  const FrameFamily fam = family_at(o, 0, tol);
  const ControlPair cp = control_at(o, 0, fam.ambient_dim(), tol);
  const Operator k = k_at(o, 0, fam.ambient_dim());
  const FrameReport frame = controlled_frame_bounds(fam, cp, tol);
  const KgfBounds kb = kgf_bounds(fam, cp, k, tol);
  return {{{"family", io::to_json(fam)},
           {"control", io::to_json(cp)},
           {"k", io::to_json(k)},
           {"frame", io::to_json(frame)},
           {"kgf", io::to_json(kb)}},
          kb.is_kgf};
}

Outcome atomic(const Options& o) {
  const Tolerances tol = tolerances(o);
  need(o.in, 1, "--in");
  const FrameFamily fam = family_at(o, 0, tol);
  const ControlPair cp = control_at(o, 0, fam.ambient_dim(), tol);
  Json base = {{"family", io::to_json(fam)}, {"control", io::to_json(cp)}};
  if (o.wrt_frame_operator) {
    const FrameOperatorAtomicity r = atomic_wrt_frame_operator(fam, cp, tol);
    base["atomic"] = io::to_json(r.report);
    base["alpha_opt"] = io::number(r.alpha_opt);
    return {base, r.report.is_atomic};
  }
  if (o.k.size() == 2) {
    const Operator k1 = k_at(o, 0, fam.ambient_dim());
    const Operator k2 = k_at(o, 1, fam.ambient_dim());
    const CombinationAtomicity r = linear_combination_atomic(fam, cp, k1, k2, o.alpha, o.beta, tol);
    base["combination"] = io::to_json(r.combination);
    base["product"] = io::to_json(r.product);
    base["both_atomic"] = r.both_atomic;
    return {base, r.both_atomic};
  }
  const Operator k = k_at(o, 0, fam.ambient_dim());
  const AtomicReport r = atomic_check(fam, cp, k, tol);
  base["k"] = io::to_json(k);
  base["atomic"] = io::to_json(r);
  base["agrees_with_kgf"] = r.is_atomic == r.kgf.is_kgf;
  return {base, r.is_atomic};
}

bool transform_passed(const TransformReport& r, double identity_limit) {
  const double pu = r.predicted_upper;
  const bool lower_ok = r.measured_lower >= r.predicted_lower - 1e-6 * pu;
  const bool upper_ok = r.measured_upper <= pu + 1e-6 * pu;
  return r.hypotheses_hold && lower_ok && upper_ok && r.operator_identity_residual <= identity_limit;
}

Outcome construct(const Options& o) {
  const Tolerances tol = tolerances(o);
  need(o.in, 2, "--in");
  const FrameFamily a = family_at(o, 0, tol);
  const FrameFamily b = family_at(o, 1, tol);
  Json base = {{"kind", o.selector}};
  if (o.selector == "sum-transform") {
    const ControlPair cp = control_at(o, 0, a.ambient_dim(), tol);
    need(o.op, 2, "--op");
    const TransformReport r = sum_transform(a, b, op_at(o, 0, a.ambient_dim()), op_at(o, 1, a.ambient_dim()), cp,
                                            k_at(o, 0, a.ambient_dim()), tol);
    base["transform"] = io::to_json(r);
    return {base, transform_passed(r, 1e-9)};
  }
  const ControlPair cp_h = control_at(o, 0, a.ambient_dim(), tol);
  const ControlPair cp_x = control_at(o, 1, b.ambient_dim(), tol);
  const Operator k_h = k_at(o, 0, a.ambient_dim());
  const Operator k_x = k_at(o, 1, b.ambient_dim());
  if (o.selector == "direct-sum") {
    const TransformReport r = direct_sum_frame(a, cp_h, k_h, b, cp_x, k_x, tol);
    base["transform"] = io::to_json(r);
    return {base, transform_passed(r, 1e-10)};
  }
  need(o.op, 2, "--op");
  const TransformReport r = conjugate_transform(a, cp_h, k_h, b, cp_x, k_x, op_at(o, 0, a.ambient_dim()),
                                                op_at(o, 1, b.ambient_dim()), tol);
  base["transform"] = io::to_json(r);
  return {base, transform_passed(r, 1e-9)};
}

PairOperator load_pair(const Options& o, const Tolerances& tol) {
  need(o.in, 2, "--in");
  const FrameFamily l = family_at(o, 0, tol);
  const FrameFamily g = family_at(o, 1, tol);
  return pair_frame_operator(l, op_at(o, 0, l.ambient_dim()), g, op_at(o, 1, g.ambient_dim()));
}

Outcome pair_op(const Options& o) {
  const Tolerances tol = tolerances(o);
  const PairOperator p = load_pair(o, tol);
  const PairOperator swapped = pair_frame_operator(p.right_family, p.right_control, p.left_family, p.left_control);
  const double adj = relative_difference(p.matrix.adjoint(), swapped.matrix);
  return {{{"pair", io::to_json(p)}, {"adjoint_residual", io::number(adj)}}, adj <= 1e-12};
}

Outcome resolutions(const Options& o) {
  const Tolerances tol = tolerances(o);
  need(o.in, 1, "--in");
  const FrameFamily fam = family_at(o, 0, tol);
  const ControlPair cp = control_at(o, 0, fam.ambient_dim(), tol);
  const CanonicalResolutions r = canonical_resolutions(fam, cp, tol);
  return {{{"resolutions", io::to_json(r)}}, r.right_inverse.converged && r.left_inverse.converged};
}

Outcome thm(const Options& o) {
  const Tolerances tol = tolerances(o);
  Json base = {{"check", o.selector}};
  if (o.selector == "4.1") {
    need(o.in, 1, "--in");
    const FrameFamily fam = family_at(o, 0, tol);
    const ControlPair cp = control_at(o, 0, fam.ambient_dim(), tol);
    const InverseResolutionReport r = inverse_resolution_check(fam, cp, tol);
    base["inverse_resolution"] = io::to_json(r);
    return {base, r.certified && r.sandwich_holds && r.resolution.converged};
  }
  if (o.selector == "4.2") {
    need(o.in, 1, "--in");
    const FrameFamily fam = family_at(o, 0, tol);
    const ResolutionFrameReport r =
        resolution_frame_check(fam, op_at(o, 0, fam.ambient_dim()), op_at(o, 1, fam.ambient_dim()), tol);
    base["resolution_frame"] = io::to_json(r);
    return {base, r.is_frame && r.bounds_hold};
  }
  const PairOperator p = load_pair(o, tol);
  if (o.selector == "4.4") {
    const CoercivePairReport r = coercive_pair_check(p, o.bessel_bound, tol);
    base["coercive_pair"] = io::to_json(r);
    return {base, r.is_frame && r.bound_holds};
  }
  const double d1 = o.d1 ? *o.d1 : controlled_frame_bounds(p.left_family, ControlPair(p.left_control, p.left_control), tol).bounds.lambda_max;
  const double d2 = o.d2 ? *o.d2 : controlled_frame_bounds(p.right_family, ControlPair(p.right_control, p.right_control), tol).bounds.lambda_max;
  const PerturbationReport r = perturbation_check(p, o.lambda1, o.lambda2, d1, d2, o.trials, o.seed, tol);
  base["d1"] = io::number(d1);
  base["d2"] = io::number(d2);
  base["perturbation"] = io::to_json(r);
  return {base, r.holds};
}

Outcome fourier_demo(const Options& o) {
  const Tolerances tol = tolerances(o);
  FourierParams p{o.nmax, o.m, o.alpha, o.beta};
  const FourierInstance inst = build_fourier_example(p);
  const FourierReport r = verify_fourier(p, o.trials, o.seed, tol);
  return {{{"params", {{"n_max", p.n_max}, {"m", p.m}, {"alpha", io::number(p.alpha)}, {"beta", io::number(p.beta)}}},
           {"seed", o.seed},
           {"family", io::to_json(inst.family)},
           {"control", io::to_json(inst.control)},
           {"k", io::to_json(inst.k)},
           {"fourier", io::to_json(r)}},
          r.holds};
}

Outcome random(const Options& o) {
  const Structure s = parse_structure(o.structure);
  const RandomInstance inst = random_instance(o.seed, o.dim, o.items, s);
  Json rep = {{"seed", o.seed},
              {"dim", o.dim},
              {"items", o.items},
              {"structure", std::string(to_string(s))},
              {"family", io::to_json(inst.family)},
              {"control", io::to_json(inst.control)}};
  if (inst.partner) rep["partner"] = io::to_json(*inst.partner);
  return {rep, true};
}

struct Command {
  std::string name;
  CLI::App* app;
  std::function<Outcome(const Options&)> handler;
};

void add_inputs(CLI::App* sub, Options& o, bool with_k, bool with_op) {
  sub->add_option("--in", o.in, "input family JSON (path or path#/pointer); repeatable");
  sub->add_option("--control", o.control, "control pair JSON; repeatable");
  if (with_k) sub->add_option("--k", o.k, "operator K JSON; repeatable");
  if (with_op) sub->add_option("--op", o.op, "auxiliary operator JSON; repeatable");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--tol", o.tol, "tolerance override name=value; repeatable");
  sub->add_option("--seed", o.seed, "64-bit seed");
  sub->add_option("--trials", o.trials, "number of sampled vectors");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Controlled g-fusion frame verification toolkit"};
  app.require_subcommand(1);
  std::vector<Command> cmds;

  auto* cf = app.add_subcommand("check-frame", "controlled frame bounds of a family");
  add_inputs(cf, o, false, false);
  cmds.push_back({"check-frame", cf, check_frame});

  auto* bd = app.add_subcommand("bounds", "optimal K-lower and Bessel bounds");
  add_inputs(bd, o, true, false);
  cmds.push_back({"bounds", bd, bounds});

  auto* at = app.add_subcommand("atomic", "atomic decomposition certificate with respect to K");
  add_inputs(at, o, true, false);
  at->add_flag("--wrt-frame-operator", o.wrt_frame_operator, "use the family's own frame operator as K");
  at->add_option("--alpha", o.alpha, "coefficient of the first K in a combination");
  at->add_option("--beta", o.beta, "coefficient of the second K in a combination");
  cmds.push_back({"atomic", at, atomic});

  auto* cs = app.add_subcommand("construct", "build a derived family and check its predicted bounds");
  add_inputs(cs, o, true, true);
  cs->add_option("kind", o.selector, "direct-sum | sum-transform | conjugate")
      ->required()
      ->check(CLI::IsMember({"direct-sum", "sum-transform", "conjugate"}));
  cmds.push_back({"construct", cs, construct});

  auto* po = app.add_subcommand("pair-op", "frame operator of a pair of families");
  add_inputs(po, o, false, true);
  cmds.push_back({"pair-op", po, pair_op});

  auto* rs = app.add_subcommand("resolutions", "canonical resolutions of the identity");
  add_inputs(rs, o, false, false);
  cmds.push_back({"resolutions", rs, resolutions});

  auto* th = app.add_subcommand("thm", "resolution and pair-operator checks");
  add_inputs(th, o, false, true);
  th->add_option("check", o.selector,
                 "4.1 inverse resolution | 4.2 resolution to frame | 4.4 coercive pair | perturb perturbation")
      ->required()
      ->check(CLI::IsMember({"4.1", "4.2", "4.4", "perturb"}));
  th->add_option("--lambda1", o.lambda1, "perturbation constant on ||f||");
  th->add_option("--lambda2", o.lambda2, "perturbation constant on ||S f||");
  th->add_option("--d1", o.d1, "Bessel bound of the left family");
  th->add_option("--d2", o.d2, "Bessel bound of the right family");
  th->add_option("--bessel-bound", o.bessel_bound, "Bessel bound of the right family for the coercive check");
  cmds.push_back({"thm", th, thm});

  auto* fd = app.add_subcommand("fourier-demo", "truncated Fourier-coefficient example");
  fd->add_option("--nmax", o.nmax, "truncation index");
  fd->add_option("--m", o.m, "partial-sum cutoff");
  fd->add_option("--alpha", o.alpha, "scalar of T");
  fd->add_option("--beta", o.beta, "scalar of U");
  cmds.push_back({"fourier-demo", fd, fourier_demo});

  auto* rd = app.add_subcommand("random", "seeded random instance");
  rd->add_option("--dim", o.dim, "ambient dimension (<= 64)");
  rd->add_option("--items", o.items, "number of items (<= 32)");
  rd->add_option("--structure", o.structure, "generic | scalar-controls | parseval | near-identity-pair");
  cmds.push_back({"random", rd, random});

  for (Command& c : cmds) add_common(c.app, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const Command* chosen = nullptr;
  for (const Command& c : cmds) {
    if (c.app->parsed()) chosen = &c;
  }

  Outcome res;
  int code = 0;
  try {
    res = chosen->handler(o);
    code = res.passed ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (is_input_error(e.kind())) return 2;
    res.report = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    if (e.index()) res.report["error"]["index"] = *e.index();
    code = 1;
  }
  res.report["command"] = chosen->name;
  res.report["passed"] = code == 0;

  const std::string text = io::dump(res.report);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "error: cannot write '" << o.out << "'\n";
      return 2;
    }
    out << chosen->name << ": " << (code == 0 ? "PASS" : "FAIL") << "\n";
  }
  return code;
}

}  // namespace gfusion::cli
