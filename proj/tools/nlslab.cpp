// Command-line front end for the laboratory: sampled inequality verification,
// instrumented simulation with energy certificates, and lifespan scans.
//
// Exit codes:  0 all checks passed      1 a check failed
//              2 configuration error    3 runtime/numeric failure
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlslab/lab.hpp"

namespace {

using namespace nlslab;

struct CommonOpts {
  std::string preset = "default";
  std::string config_file;
  std::string out_dir = "nlslab_out";
  std::int64_t seed = -1;  // -1: keep the preset/config seed
  int threads = -1;        // -1: keep the preset/config value
};

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;  // library defaults: d=1, K=32, pad 4, s grid (1,3,4)
  if (name == "default") return cfg;
  if (name == "plane_wave") {
    cfg.K = 8;
    cfg.data.j_min = 2;
    cfg.data.j_max = 2;
    cfg.solver.dt = 1e-3;
    cfg.solver.t_end = 0.5;
    return cfg;
  }
  if (name == "admissible_1d") {
    cfg.K = 64;
    cfg.pad_factor = 2;
    cfg.data.j_min = 8;
    cfg.data.j_max = 16;
    cfg.solver.dt = 1e-4;
    cfg.solver.t_end = 0.01;
    return cfg;
  }
  if (name == "admissible_2d") {
    cfg.d = 2;
    cfg.K = 12;
    cfg.pad_factor = 2;
    cfg.s0 = 2.0;
    cfg.s1 = 4.0;
    cfg.s = 5.0;
    cfg.data.j_min = 4;
    cfg.data.j_max = 8;
    cfg.solver.dt = 1e-4;
    cfg.solver.t_end = 0.002;
    return cfg;
  }
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected default, plane_wave, admissible_1d, admissible_2d)");
}

ExperimentConfig resolve_config(const CommonOpts& opt) {
  ExperimentConfig cfg = preset_config(opt.preset);
  if (!opt.config_file.empty()) cfg = load_config_file(opt.config_file, cfg);
  if (opt.seed >= 0) cfg.seed = std::uint64_t(opt.seed);
  if (opt.threads >= 0) cfg.threads = opt.threads;
  validate(cfg);
  return cfg;
}

RunManifest start_manifest(const std::string& command, const CommonOpts& opt,
                           const ExperimentConfig& cfg) {
  RunManifest m;
  m.command = command;
  m.preset = opt.preset;
  m.config = to_json(cfg);
  m.seed = cfg.seed;
  m.started_at = iso_utc_now();
  return m;
}

void finish_manifest(RunManifest& m, const std::string& dir) {
  m.content_hash = hash_outputs(dir, m.outputs);
  m.finished_at = iso_utc_now();
  write_manifest(dir + "/manifest.json", m);
  std::printf("artifacts: %s (%zu files + manifest.json)\n", dir.c_str(), m.outputs.size());
}

// A single lattice mode with unit phase, normalized in the data norm the
// sampler also targets.
FourierField plane_wave_data(const ExperimentConfig& cfg) {
  FourierField u = make_field(cfg.lattice());
  const int j0 = cfg.data.j_min;
  const double amp =
      cfg.data.target_fraction * cfg.eps / (1.0 + std::pow(double(j0), cfg.s1));
  u.ref({j0, 0, 0}) = amp;
  return u;
}

int cmd_verify(const CommonOpts& opt, std::vector<std::string> only, int samples,
               std::vector<int> sizes) {
  ExperimentConfig cfg = resolve_config(opt);
  PinnedConstants pc = pin_constants(cfg);
  if (!(cfg.weight_floor() > 1.0)) cfg.R = pc.R;
  RunManifest m = start_manifest("verify", opt, cfg);
  m.M_hat = pc.M_hat;
  m.C_hat = pc.C_hat;
  m.R = pc.R;

  std::vector<std::string> ids = only.empty() ? registry_ids() : only;
  for (const std::string& id : ids) registry_statement(id);  // reject unknown ids up front

  std::vector<RatioReport> reports(ids.size());
  parallel_for(ids.size(), resolve_threads(cfg.threads, ids.size()), [&](std::size_t i) {
    reports[i] = inequality_check(ids[i], cfg, samples, sizes);
  });

  int failed = 0;
  nlohmann::json per_id = nlohmann::json::object();
  for (const RatioReport& r : reports) {
    std::printf("%-8s %s  slope %+0.3f  worst %.4g\n", r.id.c_str(),
                r.pass ? "pass" : "FAIL", r.trend_slope, r.max_ratio.back());
    per_id[r.id] = {{"pass", r.pass},
                    {"trend_slope", r.trend_slope},
                    {"max_ratio", r.max_ratio},
                    {"aux_ok", r.aux_ok}};
    if (!r.pass) ++failed;
  }
  write_text_file(opt.out_dir + "/registry.csv", registry_csv(reports));
  m.outputs = {"registry.csv"};
  m.summary = {{"ids", ids}, {"failed", failed}, {"checks", per_id}};
  finish_manifest(m, opt.out_dir);
  std::printf("verify: %zu checks, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}

int cmd_simulate(const CommonOpts& opt) {
  ExperimentConfig cfg = resolve_config(opt);
  PinnedConstants pc = pin_constants(cfg);
  if (!(cfg.weight_floor() > 1.0)) cfg.R = pc.R;
  RunManifest m = start_manifest("simulate", opt, cfg);
  m.M_hat = pc.M_hat;
  m.C_hat = pc.C_hat;
  m.R = pc.R;

  FourierField u0;
  nlohmann::json data_summary;
  if (opt.preset == "plane_wave") {
    u0 = plane_wave_data(cfg);
    data_summary = {{"kind", "plane_wave"},
                    {"mode", cfg.data.j_min},
                    {"hs1", norm_hs_sum(u0, cfg.s1)},
                    {"l2", norm_l2(u0)}};
  } else {
    auto [field, adm] = gen_initial_data(cfg);
    u0 = field;
    data_summary = {{"kind", "random_annulus"}, {"hs1", adm.hs1},      {"l2", adm.l2},
                    {"delta", adm.delta},       {"admissible", adm.admissible()},
                    {"violation", adm.violation}};
    if (!adm.admissible())
      std::printf("note: drawn data is not admissible (%s)\n", adm.violation.c_str());
  }

  Trajectory traj = integrate(u0, cfg.resolved_solver(), cfg.telemetry());
  write_trajectory_csv(opt.out_dir + "/trajectory.csv", traj);
  m.outputs = {"trajectory.csv"};

  if (traj.aborted) {
    m.summary = {{"data", data_summary}, {"aborted", true}, {"reason", traj.abort_reason}};
    finish_manifest(m, opt.out_dir);
    std::fprintf(stderr, "simulate: integration aborted: %s\n", traj.abort_reason.c_str());
    return 3;
  }

  std::vector<CertificateReport> reports;
  nlohmann::json cert_summary = nlohmann::json::object();
  bool all_ok = true;
  for (CertificateKind k : {CertificateKind::basic, CertificateKind::high,
                            CertificateKind::improved, CertificateKind::growth}) {
    CertificateReport r = energy_certificate(traj, cfg, pc, k);
    std::printf("certificate %-9s %s  worst margin %+0.3e  inflation %.4g\n",
                to_string(k).c_str(), r.all_nonnegative ? "holds" : "VIOLATED",
                r.worst_margin, r.inflation_factor);
    cert_summary[to_string(k)] = {{"holds", r.all_nonnegative},
                                  {"worst_margin", r.worst_margin},
                                  {"inflation", r.inflation_factor}};
    all_ok = all_ok && r.all_nonnegative;
    reports.push_back(std::move(r));
  }
  write_text_file(opt.out_dir + "/certificates.csv", certificate_csv(reports));
  m.outputs.push_back("certificates.csv");

  const Observation& last = traj.telemetry.back();
  m.summary = {{"data", data_summary},
               {"aborted", false},
               {"final_time", last.t},
               {"max_mass_drift", traj.max_mass_drift},
               {"tail_warning", traj.tail_warning},
               {"certificates", cert_summary}};
  finish_manifest(m, opt.out_dir);
  std::printf("simulate: reached t=%.6g, mass drift %.3e, certificates %s\n", last.t,
              traj.max_mass_drift, all_ok ? "hold" : "VIOLATED");
  return all_ok ? 0 : 1;
}

int cmd_lifespan(const CommonOpts& opt, double horizon_factor) {
  ExperimentConfig cfg = resolve_config(opt);
  PinnedConstants pc = pin_constants(cfg);
  RunManifest m = start_manifest("lifespan", opt, cfg);
  m.M_hat = pc.M_hat;
  m.C_hat = pc.C_hat;
  m.R = pc.R;

  LifespanTable table = lifespan_scan(cfg, pc, horizon_factor);
  int feasible = 0, passed = 0;
  for (const LifespanCell& c : table.cells) {
    std::printf("cell %2zu  eps=%-7g s1=%-4g t_good=%-12.6g %s%s\n", c.index, c.eps, c.s1,
                c.t_guaranteed, c.pass ? "pass" : "FAIL",
                c.feasible ? "" : (" (infeasible: " + c.reason + ")").c_str());
    feasible += c.feasible ? 1 : 0;
    passed += c.pass ? 1 : 0;
  }
  write_text_file(opt.out_dir + "/lifespan.csv", lifespan_csv(table));
  m.outputs = {"lifespan.csv"};
  m.summary = {{"cells", table.cells.size()},
               {"feasible", feasible},
               {"passed", passed},
               {"all_pass", table.all_pass}};
  finish_manifest(m, opt.out_dir);
  std::printf("lifespan: %zu cells, %d feasible, %d passed\n", table.cells.size(), feasible,
              passed);
  return table.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: weighted-norm laboratory for the resonant cubic-type "
               "Schrodinger flow on the torus"};
  app.require_subcommand(1);

  CommonOpts opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", opt.preset,
                    "parameter preset: default, plane_wave, admissible_1d, admissible_2d");
    sub->add_option("--config", opt.config_file, "JSON config overlaid on the preset");
    sub->add_option("--out", opt.out_dir, "artifact directory");
    sub->add_option("--seed", opt.seed, "override the master seed");
    sub->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  };

  std::vector<std::string> only;
  int samples = 16;
  std::vector<int> sizes;
  CLI::App* verify = app.add_subcommand("verify", "sample the inequality registry");
  add_common(verify);
  verify->add_option("--only", only, "restrict to these registry ids")->delimiter(',');
  verify->add_option("--samples", samples, "random draws per size");
  verify->add_option("--sizes", sizes, "lattice sizes (thresholds for TRUNC)")->delimiter(',');

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate one trajectory and check its certificates");
  add_common(simulate);

  double horizon_factor = 1.25;
  CLI::App* lifespan =
      app.add_subcommand("lifespan", "scan guaranteed-time cells over (eps, s1) grids");
  add_common(lifespan);
  lifespan->add_option("--horizon", horizon_factor, "integration horizon as a multiple of the "
                                                    "guaranteed time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::filesystem::create_directories(opt.out_dir);
    if (verify->parsed()) return cmd_verify(opt, only, samples, sizes);
    if (simulate->parsed()) return cmd_simulate(opt);
    return cmd_lifespan(opt, horizon_factor);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime failure: %s\n", e.what());
    return 3;
  }
}
