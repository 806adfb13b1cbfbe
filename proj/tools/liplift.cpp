// liplift command-line tool: validates metric spaces, computes Lipschitz and
// free norms, builds De Leeuw embeddings and operator liftings, and runs the
// randomized property suite. Every command prints a `key = value` report to
// stdout; in rational mode the report is bit-identical across reruns except
// for the duration line.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liplift/free_space.hpp"
#include "liplift/io.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/lp.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/operator_lifting.hpp"
#include "liplift/random.hpp"
#include "liplift/report.hpp"
#include "liplift/scalar.hpp"
#include "liplift/suite.hpp"
#include "liplift/version.hpp"

namespace {

using namespace liplift;

// exit codes: 0 ok, 2 input validation, 3 parse/usage, 4 numerical failure,
// 5 property or verification failure
constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitProperty = 5;

int exit_code_for(errc code) {
  switch (code) {
    case errc::asymmetric_matrix:
    case errc::negative_distance:
    case errc::zero_distance_distinct_points:
    case errc::nonzero_diagonal:
    case errc::triangle_violation:
    case errc::invalid_label:
    case errc::duplicate_label:
    case errc::base_out_of_range:
    case errc::cap_exceeded:
    case errc::degenerate_space:
    case errc::equal_points:
    case errc::space_mismatch:
    case errc::base_not_preserved:
      return kExitValidation;
    case errc::parse_error:
    case errc::io_error:
    case errc::dimension_mismatch:
      return kExitParse;
    case errc::numerical_breakdown:
    case errc::no_preimage:
    case errc::lp_infeasible:
    case errc::lp_unbounded:
      return kExitNumerical;
  }
  return kExitNumerical;
}

struct Options {
  std::string mode = "float";
  std::string tol;           // LP feasibility/duality tolerance
  std::string residual_tol;  // commutation residual tolerance
  std::string epsilon = "0";
  std::uint64_t seed = 42;
  bool emit_matrices = false;

  std::string command;
  std::string input_file;
  std::string second_file;
  std::string out_file;
  int depth = 1;
  std::vector<int> sizes = {2, 3, 4, 5};
  int trials = 200;
  std::string inject_fault;
};

template <class T>
struct ModeValues {
  T tol;
  T residual_tol;
  T epsilon;
};

template <class T>
T parse_flag_scalar(const std::string& text, const std::string& flag) {
  auto v = scalar_traits<T>::parse(text);
  if (!v) throw error(errc::parse_error, "cannot parse --" + flag + " value '" + text + "'");
  return *v;
}

template <class T>
ModeValues<T> mode_values(const Options& opt) {
  ModeValues<T> mv;
  if (opt.tol.empty()) {
    mv.tol = scalar_traits<T>::exact ? scalar_traits<T>::zero()
                                     : scalar_traits<T>::from_ratio(1, 1000000000);
  } else {
    mv.tol = parse_flag_scalar<T>(opt.tol, "tol");
  }
  if (opt.residual_tol.empty()) {
    mv.residual_tol = scalar_traits<T>::exact ? scalar_traits<T>::zero()
                                              : scalar_traits<T>::from_ratio(1, 100000000);
  } else {
    mv.residual_tol = parse_flag_scalar<T>(opt.residual_tol, "residual-tol");
  }
  mv.epsilon = parse_flag_scalar<T>(opt.epsilon, "epsilon");
  return mv;
}

template <class T>
void echo_tolerances(RunReport& report, const ModeValues<T>& mv) {
  report.add_scalar("tol", mv.tol);
  report.add_scalar("residual_tol", mv.residual_tol);
  report.add_scalar("epsilon", mv.epsilon);
}

template <class T>
std::string space_summary(const PointedMetricSpace<T>& space) {
  return std::to_string(space.size()) + " points, base '" + space.label(space.base()) + "'";
}

template <class T>
int cmd_validate(const Options& opt) {
  RunReport report("validate", scalar_traits<T>::mode_name);
  echo_tolerances(report, mode_values<T>(opt));
  std::string content = read_file(opt.input_file);
  report.add_input("space", opt.input_file, content);
  SpacePtr<T> space = parse_space_text<T>(opt.input_file, content);
  report.add("points", space->size());
  report.add("base_label", space->label(space->base()));
  report.add("ultrametric", space->is_ultrametric() ? "true" : "false");
  report.add("valid", "true");
  report.print(std::cout);
  return 0;
}

template <class T>
int cmd_lipnorm(const Options& opt) {
  RunReport report("lipnorm", scalar_traits<T>::mode_name);
  echo_tolerances(report, mode_values<T>(opt));
  report.add_input("function", opt.input_file, read_file(opt.input_file));
  LipschitzFunction<T> f = parse_function_file<T>(opt.input_file);
  report.add("space", space_summary(*f.space()));
  report.add_scalar("lip_norm", lip_norm(f));
  report.print(std::cout);
  return 0;
}

template <class T>
int cmd_freenorm(const Options& opt) {
  RunReport report("freenorm", scalar_traits<T>::mode_name);
  ModeValues<T> mv = mode_values<T>(opt);
  echo_tolerances(report, mv);
  report.add_input("freevector", opt.input_file, read_file(opt.input_file));
  FreeVector<T> mu = parse_free_vector_file<T>(opt.input_file);
  report.add("space", space_summary(*mu.space()));
  T primal = free_norm(mu);
  MoleculeDecomposition<T> rep = optimal_representation(mu);
  report.add_scalar("free_norm", primal);
  report.add_scalar("representation_l1", rep.l1_value);
  report.add_scalar("duality_gap", scalar_traits<T>::abs(primal - rep.l1_value));
  if (opt.emit_matrices) {
    std::ostringstream block;
    block << "representation over " << mu.space()->size() * (mu.space()->size() - 1)
          << " molecules\n";
    PairSet pairs(mu.space()->size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      block << detail::pair_label(*mu.space(), pairs[r]) << " = "
            << scalar_traits<T>::to_string(rep.coefficients[r]) << "\n";
    }
    report.add_block(block.str());
  }
  report.print(std::cout);
  return 0;
}

template <class T>
int cmd_deleeuw(const Options& opt) {
  RunReport report("deleeuw", scalar_traits<T>::mode_name);
  echo_tolerances(report, mode_values<T>(opt));
  std::string content = read_file(opt.input_file);
  report.add_input("space", opt.input_file, content);
  SpacePtr<T> space = parse_space_text<T>(opt.input_file, content);
  DeLeeuwMatrix<T> m = de_leeuw_matrix(space);
  report.add("rows", m.rows());
  report.add("cols", m.cols());
  if (opt.emit_matrices) {
    std::ostringstream block;
    block << "de_leeuw rows=" << m.rows() << " cols=" << m.cols() << "\n";
    for (int r = 0; r < m.rows(); ++r) {
      block << "row " << detail::pair_label(*space, m.pairs()[r]) << " =";
      for (int c = 0; c < m.cols(); ++c) {
        block << " " << scalar_traits<T>::to_string(m.entry(r, c));
      }
      block << "\n";
    }
    report.add_block(block.str());
  }
  report.print(std::cout);
  return 0;
}

template <class T>
int cmd_opnorm(const Options& opt) {
  RunReport report("opnorm", scalar_traits<T>::mode_name);
  echo_tolerances(report, mode_values<T>(opt));
  report.add_input("operator", opt.input_file, read_file(opt.input_file));
  OperatorInput<T> in = parse_operator_input<T>(opt.input_file);
  OperatorNormResult<T> res = operator_norm_witness(in.op);
  report.add("domain", space_summary(*in.op.domain()));
  report.add("codomain", space_summary(*in.op.codomain()));
  report.add_scalar("operator_norm", res.value);
  if (res.attaining.x >= 0) {
    report.add("attaining_pair", detail::pair_label(*in.op.codomain(), res.attaining));
  }
  report.print(std::cout);
  return 0;
}

template <class T>
std::string lifting_block(const LiftingMatrix<T>& lift) {
  std::ostringstream block;
  block << "lifting rows=" << lift.codomain_pairs().size()
        << " cols=" << lift.domain_pairs().size() << "\n";
  for (std::size_t r = 0; r < lift.codomain_pairs().size(); ++r) {
    block << "row " << detail::pair_label(*lift.codomain(), lift.codomain_pairs()[r]) << " =";
    for (std::size_t c = 0; c < lift.domain_pairs().size(); ++c) {
      block << " " << scalar_traits<T>::to_string(lift.rows()[r][c]);
    }
    block << "\n";
  }
  return block.str();
}

template <class T>
void write_lifting_out(const LiftingMatrix<T>& lift, const OperatorInput<T>& in,
                       const std::string& out_file) {
  std::string dom = std::filesystem::absolute(in.domain_path).string();
  std::string cod = std::filesystem::absolute(in.codomain_path).string();
  write_file(out_file, format_lifting(lift, dom, cod));
}

template <class T>
int cmd_lift(const Options& opt) {
  RunReport report("lift", scalar_traits<T>::mode_name);
  ModeValues<T> mv = mode_values<T>(opt);
  echo_tolerances(report, mv);
  report.add_input("operator", opt.input_file, read_file(opt.input_file));
  OperatorInput<T> in = parse_operator_input<T>(opt.input_file);
  report.add("domain", space_summary(*in.op.domain()));
  report.add("codomain", space_summary(*in.op.codomain()));

  T norm = operator_norm(in.op);
  LiftingMatrix<T> lift = build_lifting(in.op, mv.epsilon);
  T lnorm = lifting_norm(lift);
  CommutationCheck<T> check = verify_commutation(in.op, lift);
  report.add_scalar("operator_norm", norm);
  report.add_scalar("lifting_norm", lnorm);
  report.add("lifting_rank", lifting_rank(lift));
  report.add_scalar("commutation_residual", check.residual);
  report.add_scalar("commutation_basis_bound", check.basis_bound);
  bool ok = check.residual <= mv.residual_tol && lnorm <= norm + mv.epsilon + mv.tol;
  report.add("lifting_ok", ok ? "true" : "false");
  if (!opt.out_file.empty()) {
    write_lifting_out(lift, in, opt.out_file);
    report.add("lifting_file", opt.out_file);
  }
  if (opt.emit_matrices) report.add_block(lifting_block(lift));
  report.print(std::cout);
  return ok ? 0 : kExitProperty;
}

template <class T>
int cmd_lift_compose(const Options& opt) {
  RunReport report("lift-compose", scalar_traits<T>::mode_name);
  ModeValues<T> mv = mode_values<T>(opt);
  echo_tolerances(report, mv);
  report.add_input("compose", opt.input_file, read_file(opt.input_file));
  CompositionInput<T> in = parse_compose_file<T>(opt.input_file);
  LipOperator<T> op = composition_operator(in.gamma, in.scale);
  LiftingMatrix<T> lift = composition_lifting(in.gamma, in.scale);
  CommutationCheck<T> check = verify_commutation(op, lift);

  // distance-ratio formula for the expected lifting norm
  T expected = scalar_traits<T>::zero();
  const auto& n_space = *in.gamma.from;
  PairSet pairs(n_space.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    int gx = in.gamma.images[pairs[p].x];
    int gy = in.gamma.images[pairs[p].y];
    if (gx == gy) continue;
    T v = scalar_traits<T>::abs(in.scale) * in.gamma.to->dist(gx, gy) /
          n_space.dist(pairs[p].x, pairs[p].y);
    if (v > expected) expected = v;
  }

  report.add_scalar("scale", in.scale);
  report.add_scalar("operator_norm", operator_norm(op));
  report.add_scalar("lifting_norm", lifting_norm(lift));
  report.add_scalar("formula_norm", expected);
  report.add_scalar("commutation_residual", check.residual);
  bool ok = check.residual <= mv.residual_tol &&
            scalar_traits<T>::abs(lifting_norm(lift) - expected) <= mv.tol;
  report.add("lifting_ok", ok ? "true" : "false");
  if (opt.emit_matrices) report.add_block(lifting_block(lift));
  report.print(std::cout);
  return ok ? 0 : kExitProperty;
}

template <class T>
int cmd_verify(const Options& opt) {
  RunReport report("verify", scalar_traits<T>::mode_name);
  ModeValues<T> mv = mode_values<T>(opt);
  echo_tolerances(report, mv);
  report.add_input("operator", opt.input_file, read_file(opt.input_file));
  report.add_input("lifting", opt.second_file, read_file(opt.second_file));
  OperatorInput<T> in = parse_operator_input<T>(opt.input_file);
  LiftingMatrix<T> lift = parse_lifting_file<T>(opt.second_file);
  if (!same_space(in.op.domain(), lift.domain()) ||
      !same_space(in.op.codomain(), lift.codomain())) {
    throw error(errc::space_mismatch, "operator and lifting reference different spaces");
  }
  T norm = operator_norm(in.op);
  T lnorm = lifting_norm(lift);
  CommutationCheck<T> check = verify_commutation(in.op, lift);
  report.add_scalar("operator_norm", norm);
  report.add_scalar("lifting_norm", lnorm);
  report.add("lifting_rank", lifting_rank(lift));
  report.add_scalar("commutation_residual", check.residual);
  report.add_scalar("commutation_basis_bound", check.basis_bound);
  bool ok = check.residual <= mv.residual_tol && lnorm <= norm + mv.epsilon + mv.tol;
  report.add("lifting_ok", ok ? "true" : "false");
  report.print(std::cout);
  return ok ? 0 : kExitProperty;
}

template <class T>
int cmd_gen_ultrametric(const Options& opt) {
  RunReport report("gen-ultrametric", scalar_traits<T>::mode_name);
  echo_tolerances(report, mode_values<T>(opt));
  if (opt.out_file.empty()) {
    throw error(errc::io_error, "gen-ultrametric requires --out <file>");
  }
  SpacePtr<T> space = gen_ultrametric_cube<T>(opt.depth);
  std::string text = format_space(*space);
  write_file(opt.out_file, text);
  report.add("depth", opt.depth);
  report.add("points", space->size());
  report.add("ultrametric", space->is_ultrametric() ? "true" : "false");
  report.add("output.path", opt.out_file);
  report.add("output.digest", "fnv1a64:" + digest_hex(text));
  report.print(std::cout);
  return 0;
}

template <class T>
int cmd_suite(const Options& opt) {
  RunReport report("suite", scalar_traits<T>::mode_name);
  ModeValues<T> mv = mode_values<T>(opt);
  echo_tolerances(report, mv);
  report.add("seed", static_cast<long long>(opt.seed));
  report.add("trials", opt.trials);
  std::ostringstream sizes;
  int cap = point_cap_from_env();
  for (std::size_t i = 0; i < opt.sizes.size(); ++i) {
    if (opt.sizes[i] > cap) {
      throw error(errc::cap_exceeded, "size " + std::to_string(opt.sizes[i]) +
                                          " exceeds the configured cap of " +
                                          std::to_string(cap));
    }
    sizes << (i > 0 ? "," : "") << opt.sizes[i];
  }
  report.add("sizes", sizes.str());

  SuiteConfig cfg;
  cfg.seed = opt.seed;
  cfg.sizes = opt.sizes;
  cfg.trials = opt.trials;
  cfg.inject_fault = opt.inject_fault;
  std::vector<PropertyResult> results = run_suite<T>(cfg);
  bool all_pass = true;
  for (const auto& r : results) {
    report.add("property." + r.name,
               std::string(r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.checks) +
                   " checks)");
    if (!r.pass) {
      all_pass = false;
      report.add("failed_property", r.name);
      report.add("witness", r.witness);
    }
  }
  report.add("suite_ok", all_pass ? "true" : "false");
  report.print(std::cout);
  return all_pass ? 0 : kExitProperty;
}

template <class T>
int dispatch(const Options& opt) {
  if (opt.command == "validate") return cmd_validate<T>(opt);
  if (opt.command == "lipnorm") return cmd_lipnorm<T>(opt);
  if (opt.command == "freenorm") return cmd_freenorm<T>(opt);
  if (opt.command == "deleeuw") return cmd_deleeuw<T>(opt);
  if (opt.command == "opnorm") return cmd_opnorm<T>(opt);
  if (opt.command == "lift") return cmd_lift<T>(opt);
  if (opt.command == "lift-compose") return cmd_lift_compose<T>(opt);
  if (opt.command == "verify") return cmd_verify<T>(opt);
  if (opt.command == "gen-ultrametric") return cmd_gen_ultrametric<T>(opt);
  if (opt.command == "suite") return cmd_suite<T>(opt);
  throw error(errc::io_error, "unknown command '" + opt.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"liplift: norms, embeddings, and operator liftings over finite pointed "
               "metric spaces"};
  app.set_version_flag("--version", std::string("liplift ") + liplift::version_string);
  app.require_subcommand(1);
  app.add_option("--mode", opt.mode, "arithmetic backend")
      ->check(CLI::IsMember({"float", "rational"}))
      ->capture_default_str();
  app.add_option("--tol", opt.tol, "LP feasibility/duality tolerance (default 1e-9, 0 exact)");
  app.add_option("--residual-tol", opt.residual_tol,
                 "commutation residual tolerance (default 1e-8, 0 exact)");
  app.add_option("--epsilon", opt.epsilon, "lifting norm budget slack")->capture_default_str();
  app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
  app.add_flag("--emit-matrices", opt.emit_matrices, "embed matrices in the report");

  auto* validate = app.add_subcommand("validate", "validate a space file");
  validate->add_option("space", opt.input_file, "space file")->required();
  auto* lipnorm = app.add_subcommand("lipnorm", "Lipschitz norm of a function file");
  lipnorm->add_option("function", opt.input_file, "function file")->required();
  auto* freenorm = app.add_subcommand("freenorm", "free norm of a freevector file");
  freenorm->add_option("freevector", opt.input_file, "freevector file")->required();
  auto* deleeuw = app.add_subcommand("deleeuw", "difference-quotient embedding matrix");
  deleeuw->add_option("space", opt.input_file, "space file")->required();
  auto* opnorm = app.add_subcommand("opnorm", "operator norm of an operator file");
  opnorm->add_option("operator", opt.input_file, "operator file")->required();
  auto* lift = app.add_subcommand("lift", "build and check the lifting of an operator");
  lift->add_option("operator", opt.input_file, "operator file")->required();
  lift->add_option("--out", opt.out_file, "write the lifting matrix to this file");
  auto* liftc = app.add_subcommand("lift-compose", "explicit lifting of a composition operator");
  liftc->add_option("compose", opt.input_file, "compose map file")->required();
  auto* verify = app.add_subcommand("verify", "check a lifting file against an operator file");
  verify->add_option("operator", opt.input_file, "operator file")->required();
  verify->add_option("lifting", opt.second_file, "lifting file")->required();
  auto* gen = app.add_subcommand("gen-ultrametric", "generate an ultrametric cube space");
  gen->add_option("depth", opt.depth, "word length (2^depth points)")->required();
  gen->add_option("--out", opt.out_file, "write the space file here");
  auto* suite = app.add_subcommand("suite", "run the randomized property battery");
  suite->add_option("--sizes", opt.sizes, "space sizes to draw from")
      ->delimiter(',')
      ->capture_default_str();
  suite->add_option("--trials", opt.trials, "check count budget")->capture_default_str();
  suite->add_option("--inject-fault", opt.inject_fault,
                    "corrupt the named property's data (negative testing)");

  // global flags remain valid after the subcommand name
  for (CLI::App* sc : {validate, lipnorm, freenorm, deleeuw, opnorm, lift, liftc, verify, gen,
                       suite}) {
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitParse;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    if (opt.mode == "rational") return dispatch<liplift::Rational>(opt);
    return dispatch<double>(opt);
  } catch (const liplift::error& e) {
    std::cout << "error = " << e.what() << "\n";
    std::cerr << "liplift: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "liplift: internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
