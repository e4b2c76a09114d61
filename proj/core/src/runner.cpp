#include "dynframe/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <Eigen/Eigenvalues>

#include "dynframe/defect.hpp"
#include "dynframe/frames.hpp"
#include "dynframe/hardy.hpp"
#include "dynframe/tighten.hpp"

namespace dynframe::runner {

using serialize::Json;

namespace {

struct TaskContext {
  serialize::ParsedOperator parsed;
  std::optional<Mat> generators;
  Index cutoff = 40;
  double tol = 1e-8;
  std::uint64_t seed = 0x5eed;
  std::optional<std::string> csv_dir;
  Index task_index = 0;
};

void export_csv(const TaskContext& ctx, const std::string& name, const Mat& m) {
  if (!ctx.csv_dir) return;
  std::filesystem::create_directories(*ctx.csv_dir);
  const std::string path = *ctx.csv_dir + "/task" + std::to_string(ctx.task_index) +
                           "_" + name + ".csv";
  std::ofstream out(path);
  out << serialize::mat_to_csv(m);
}

Json sorted_eigenvalues(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m, false);
  std::vector<Complex> lam(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(lam.begin(), lam.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  Json out = Json::array();
  for (const Complex& l : lam) out.push_back(serialize::complex_to_json(l));
  return out;
}

frames::FrameSystem require_system(const TaskContext& ctx) {
  if (!ctx.generators)
    fail(ErrorCode::InvalidArgument, "task requires a generators list");
  serialize::OperatorInput in = ctx.parsed.build(ctx.cutoff);
  return frames::FrameSystem(in.op, *ctx.generators);
}

inner::MatrixInner require_inner(const TaskContext& ctx) {
  if (!ctx.parsed.inner_function)
    fail(ErrorCode::InvalidArgument,
         "task requires a blaschke-model operator");
  return *ctx.parsed.inner_function;
}

Json task_admissibility(const TaskContext& ctx) {
  serialize::OperatorInput in = ctx.parsed.build(ctx.cutoff);
  ops::AdmissibilityReport rep = ops::admissibility(in.op, ctx.tol);
  Json res;
  res["norm"] = rep.norm;
  res["spectral_radius"] = rep.spectral_radius;
  res["is_contraction"] = rep.is_contraction;
  res["adjoint_strongly_stable"] = rep.adjoint_strongly_stable;
  res["admits_parseval"] = rep.admits_parseval;
  res["admits_frame"] = rep.admits_frame;
  res["parseval_index"] = rep.admits_parseval ? defect::parseval_index(in.op, ctx.tol) : 0;
  res["gamma"] = nullptr;
  if (rep.spectral_radius < 1.0 - ctx.tol) {
    // Supplementary: a witness-verified generator count. A conditioning
    // failure here should not void the admissibility verdict itself.
    try {
      frames::IndexOracleResult oracle = frames::frame_index_oracle(in.op, ctx.seed);
      res["gamma"] = oracle.gamma;
    } catch (const Error& e) {
      res["gamma_note"] = e.what();
    }
  }
  return res;
}

Json task_frame_bounds(const TaskContext& ctx) {
  frames::FrameSystem sys = require_system(ctx);
  frames::FrameReport rep = frames::frame_bounds(sys);
  Mat t = sys.op.matrix();
  const double resid = numkit::spectral_norm(
      rep.frame_operator.mat() - t * rep.frame_operator.mat() * t.adjoint() -
      sys.generators * sys.generators.adjoint());
  Json res;
  res["lower_bound"] = rep.lower_bound;
  res["upper_bound"] = rep.upper_bound;
  res["is_frame"] = rep.is_frame;
  res["is_parseval"] = rep.is_parseval;
  res["parseval_defect"] = rep.parseval_defect;
  res["stein_residual"] = resid;
  return res;
}

Json task_parseval_generators(const TaskContext& ctx) {
  serialize::OperatorInput in = ctx.parsed.build(ctx.cutoff);
  frames::FrameSystem sys = defect::parseval_generators(in.op, ctx.tol);
  frames::FrameReport rep = frames::frame_bounds(sys);
  Json res;
  res["generator_count"] = sys.generator_count();
  res["parseval_index"] = defect::parseval_index(in.op, ctx.tol);
  res["parseval_defect"] = rep.parseval_defect;
  res["generator_rank"] = numkit::numerical_rank(sys.generators);
  res["generators"] = serialize::mat_to_json(sys.generators);
  export_csv(ctx, "parseval_generators", sys.generators);
  return res;
}

Json task_tighten(const TaskContext& ctx) {
  frames::FrameSystem sys = require_system(ctx);
  tighten::TightenResult tr = tighten::canonical_tighten(sys);
  Json res;
  res["q"] = serialize::mat_to_json(tr.q.matrix());
  res["q_norm"] = tr.q_norm;
  res["tightened_parseval_defect"] = tr.parseval_defect;
  res["tightened_generators"] = serialize::mat_to_json(tr.tightened.generators);
  export_csv(ctx, "tightened_generators", tr.tightened.generators);
  return res;
}

Json task_index_certificate(const TaskContext& ctx) {
  serialize::OperatorInput in = ctx.parsed.build(ctx.cutoff);
  tighten::IndexCertificate cert = tighten::index_certificate(in.op, ctx.seed);
  Json res;
  res["gamma"] = cert.gamma;
  res["rank_defect_q"] = cert.rank_defect_q;
  res["check"] = cert.check;
  res["stein_residual"] = cert.stein_residual;
  res["q_norm"] = cert.q_norm;
  return res;
}

Json task_model_space(const TaskContext& ctx) {
  Json res;
  if (ctx.parsed.inner_function) {
    inner::MatrixInner q = *ctx.parsed.inner_function;
    hardy::TruncHardy h{q.dim(), ctx.cutoff};
    hardy::ModelSpace n = hardy::model_space(q, h);
    res["dim"] = n.dim();
    res["tail_tol"] = n.tail_tol;
    res["invariance_defect"] = n.invariance_defect;
    res["compression_eigenvalues"] = sorted_eigenvalues(hardy::compression(n).matrix());
    export_csv(ctx, "model_space_basis", n.basis.basis);
  } else {
    serialize::OperatorInput in = ctx.parsed.build(ctx.cutoff);
    defect::ModelSpaceChecks checks;
    hardy::ModelSpace n = defect::model_space_of(in.op, ctx.cutoff, ctx.tol, &checks);
    res["dim"] = n.dim();
    res["tail_tol"] = n.tail_tol;
    res["invariance_defect"] = n.invariance_defect;
    res["constants_overlap_sigma_min"] = checks.constants_overlap_sigma_min;
    export_csv(ctx, "model_space_basis", n.basis.basis);
  }
  return res;
}

Json task_adjoint_frame(const TaskContext& ctx) {
  inner::MatrixInner q = require_inner(ctx);
  hardy::TruncHardy h{q.dim(), ctx.cutoff};
  hardy::AdjointFrameResult adj = hardy::adjoint_frame(q, h);
  frames::FrameReport rep = frames::frame_bounds(adj.system);
  Json res;
  res["generator_count"] = adj.system.generator_count();
  res["model_space_dim"] = adj.space.dim();
  res["parseval_defect"] = rep.parseval_defect;
  res["is_parseval_within_tail"] =
      rep.parseval_defect <= std::max(adj.space.tail_tol, ctx.tol);
  export_csv(ctx, "adjoint_generators", adj.system.generators);
  return res;
}

Json task_optimal_frames(const TaskContext& ctx) {
  serialize::OperatorInput in = ctx.parsed.build(ctx.cutoff);
  hardy::OptimalFrames opt = hardy::optimal_frames(in.op, ctx.cutoff);
  frames::FrameReport rep_t = frames::frame_bounds(opt.for_op);
  frames::FrameReport rep_adj = frames::frame_bounds(opt.for_adjoint);
  Json res;
  res["generator_count"] = opt.generator_count;
  res["parseval_index"] = defect::parseval_index(in.op, ctx.tol);
  res["parseval_defect_T"] = rep_t.parseval_defect;
  res["parseval_defect_T_adjoint"] = rep_adj.parseval_defect;
  res["generators_T_rank"] = numkit::numerical_rank(opt.for_op.generators);
  res["generators_T_adjoint_rank"] =
      numkit::numerical_rank(opt.for_adjoint.generators);
  export_csv(ctx, "optimal_generators_T", opt.for_op.generators);
  export_csv(ctx, "optimal_generators_T_adjoint", opt.for_adjoint.generators);
  return res;
}

Json task_inner_similarity(const TaskContext& ctx) {
  inner::MatrixInner q = require_inner(ctx);
  Json res;
  const Index m = std::max<Index>(ctx.cutoff, 2 * q.degree());
  if (q.dim() == 1) {
    inner::ScalarSimilarity sim =
        inner::similarity_test_scalar(q.diag_entries()[0], m, 1e-9);
    res["similar"] = sim.similar;
    res["zero_set_verdict"] = sim.zero_set_verdict;
    res["coefficient_verdict"] = sim.coefficient_verdict;
    if (sim.alpha_witness)
      res["alpha_witness"] = serialize::complex_to_json(*sim.alpha_witness);
    else
      res["alpha_witness"] = nullptr;
  } else {
    inner::MatrixSimilarity sim = inner::similarity_test_matrix(q, m);
    res["similar"] = sim.similar;
  }
  return res;
}

Json task_synthesis_kernel(const TaskContext& ctx) {
  Json res;
  if (ctx.parsed.inner_function) {
    inner::MatrixInner q = *ctx.parsed.inner_function;
    hardy::TruncHardy h{q.dim(), ctx.cutoff};
    hardy::AdjointFrameResult adj = hardy::adjoint_frame(q, h);
    numkit::Subspace ker =
        frames::synthesis_kernel(adj.system, ctx.cutoff, 1e-8);
    // Coefficient space of the synthesis operator is a truncated Hardy
    // space with one coordinate per surviving generator.
    hardy::TruncHardy coeff_space{adj.system.generator_count(), ctx.cutoff};
    numkit::Subspace rho_span = hardy::invariant_subspace(
        inner::rho_matrix(q), coeff_space);
    res["kernel_dim"] = ker.dim();
    res["rho_span_dim"] = rho_span.dim();
    const double dist = std::max(numkit::subspace_distance(ker.basis, rho_span.basis),
                                 numkit::subspace_distance(rho_span.basis, ker.basis));
    res["principal_angle_sine_vs_rho_span"] = dist;
    export_csv(ctx, "synthesis_matrix", frames::synthesis_matrix(adj.system, ctx.cutoff));
    export_csv(ctx, "synthesis_kernel", ker.basis);
  } else {
    frames::FrameSystem sys = require_system(ctx);
    numkit::Subspace ker = frames::synthesis_kernel(sys, ctx.cutoff);
    res["kernel_dim"] = ker.dim();
    res["coefficient_space_dim"] = ker.ambient_dim;
    export_csv(ctx, "synthesis_matrix", frames::synthesis_matrix(sys, ctx.cutoff));
    export_csv(ctx, "synthesis_kernel", ker.basis);
  }
  return res;
}

const char* identity_for(const std::string& task) {
  if (task == "admissibility")
    return "Parseval iterates exist iff |T| <= 1 and (T*)^n -> 0 strongly";
  if (task == "frame-bounds") return "S - T S T* = sum_i v_i v_i*";
  if (task == "parseval-generators")
    return "D = (I - T T*)^{1/2}; {T^n D g_i} has frame operator I";
  if (task == "tighten")
    return "Q = S^{-1/2} T S^{1/2} with generators S^{-1/2} v_i is Parseval";
  if (task == "index-certificate")
    return "gamma(T) = gamma_p(Q) = rank(I - Q Q*)";
  if (task == "model-space") return "N = H^2 ominus Q H^2; A_N = P_N S|_N";
  if (task == "adjoint-frame")
    return "{(S*)^n S* Q e_i} is a Parseval frame of N";
  if (task == "optimal-frames")
    return "gamma_p(T) = gamma_p(T*), attained with independent generators";
  if (task == "inner-similarity")
    return "rho(Q) H^2 = Q H^2 iff unitary A has A Q_n = Q_n A = (A Q_n)*";
  if (task == "synthesis-kernel") return "ker C = rho(Q) H^2";
  return "";
}

}  // namespace

Json run_tasks(const Json& config, const RunOptions& opts) {
  if (!config.contains("operator"))
    fail(ErrorCode::InvalidArgument, "config needs an operator");
  if (!config.contains("tasks") || !config.at("tasks").is_array())
    fail(ErrorCode::InvalidArgument, "config needs a tasks list");

  TaskContext ctx{serialize::parse_operator(config.at("operator")),
                  std::nullopt, 40, 1e-8, 0x5eed, opts.csv_dir, 0};
  if (config.contains("generators"))
    ctx.generators = serialize::mat_from_json(config.at("generators"));
  if (config.contains("truncation")) {
    const Json& tr = config.at("truncation");
    ctx.cutoff = tr.value("m", 40);
    ctx.tol = tr.value("tol", 1e-8);
  }
  ctx.seed = config.value("seed", std::uint64_t{0x5eed});
  if (opts.seed_override) ctx.seed = *opts.seed_override;
  if (opts.tol_override) ctx.tol = *opts.tol_override;

  Json report;
  report["config"] = config;
  report["seed"] = ctx.seed;
  report["tolerance"] = ctx.tol;
  Json entries = Json::array();

  for (const auto& task_json : config.at("tasks")) {
    const std::string task = task_json.get<std::string>();
    Json entry;
    entry["task"] = task;
    entry["identity"] = identity_for(task);
    if (task == "admissibility") entry["results"] = task_admissibility(ctx);
    else if (task == "frame-bounds") entry["results"] = task_frame_bounds(ctx);
    else if (task == "parseval-generators")
      entry["results"] = task_parseval_generators(ctx);
    else if (task == "tighten") entry["results"] = task_tighten(ctx);
    else if (task == "index-certificate")
      entry["results"] = task_index_certificate(ctx);
    else if (task == "model-space") entry["results"] = task_model_space(ctx);
    else if (task == "adjoint-frame") entry["results"] = task_adjoint_frame(ctx);
    else if (task == "optimal-frames") entry["results"] = task_optimal_frames(ctx);
    else if (task == "inner-similarity")
      entry["results"] = task_inner_similarity(ctx);
    else if (task == "synthesis-kernel")
      entry["results"] = task_synthesis_kernel(ctx);
    else
      fail(ErrorCode::InvalidArgument, "unknown task '" + task + "'");
    entries.push_back(std::move(entry));
    ++ctx.task_index;
  }
  report["tasks"] = std::move(entries);
  return report;
}

int run_file(const std::string& config_path, const RunOptions& opts,
             const std::optional<std::string>& out_path, std::ostream& err) {
  Json config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      err << "error: cannot open config '" << config_path << "'\n";
      return 2;
    }
    config = Json::parse(in);
  } catch (const std::exception& e) {
    err << "error: config parse failure: " << e.what() << "\n";
    return 2;
  }

  try {
    Json report = run_tasks(config, opts);
    if (out_path) {
      std::ofstream out(*out_path);
      out << report.dump(2) << "\n";
    } else {
      std::cout << report.dump(2) << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::NotInDisc:
      case ErrorCode::NonHermitian:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace dynframe::runner
