#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ergokit/cli.hpp"
#include "ergokit/ergotropy.hpp"
#include "ergokit/gaps.hpp"
#include "ergokit/haar.hpp"
#include "ergokit/kernels.hpp"
#include "ergokit/state_io.hpp"
#include "ergokit/thermal.hpp"

namespace ergokit::cli {

using nlohmann::ordered_json;

namespace {

ordered_json energy(double value, const char* units = "absolute") {
  ordered_json e;
  e["value"] = value;
  e["units"] = units;
  return e;
}

ordered_json beta_value(double beta) {
  if (std::isinf(beta)) return beta > 0 ? "+inf" : "-inf";
  return beta;
}

std::vector<double> to_vector(std::span<const double> v) { return {v.begin(), v.end()}; }

std::string partition_label(const Partition& p) {
  std::string out;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (b) out += '|';
    for (auto i : p[b]) out += i < 26 ? std::string(1, static_cast<char>('A' + i)) : "S" + std::to_string(i);
  }
  return out;
}

struct Inputs {
  DensityMatrix rho;
  Hamiltonian h;
};

Inputs load_inputs(const Command& cmd) {
  if (cmd.state_source.empty()) throw Error(ErrorCode::InvalidArgument, "--state is required");
  DensityMatrix rho = state_from_json(load_json_source(cmd.state_source));
  Hamiltonian h = cmd.ham_spec.empty() ? default_hamiltonian(rho.dims()) : parse_ham_spec(cmd.ham_spec);
  if (h.dim() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                                  " differs from Hamiltonian dimension " + std::to_string(h.dim()));
  // An unstructured state takes the subsystem layout of a composite Hamiltonian.
  if (h.is_composite() && rho.dims().size() == 1) rho = DensityMatrix(rho.matrix(), h.subsystem_dims());
  return {std::move(rho), std::move(h)};
}

ordered_json cmd_capacity(const Command& cmd) {
  const auto [rho, h] = load_inputs(cmd);
  const auto w = work_quantities(rho, h);
  ordered_json out;
  out["command"] = "capacity";
  out["dims"] = std::vector<std::size_t>(rho.dims().begin(), rho.dims().end());
  out["capacity"] = energy(w.capacity);
  out["ergotropy"] = energy(w.ergotropy);
  out["antiergotropy"] = energy(w.antiergotropy);
  out["mean_energy"] = energy(w.mean_energy);
  out["passive_energy"] = energy(w.passive_energy);
  out["active_energy"] = energy(w.active_energy);
  out["variance_lower_bound"] = energy(variance_lower_bound(rho, h));
  out["state_spectrum"] = to_vector(rho.spectrum().values());
  out["energy_spectrum"] = to_vector(h.energies().values());
  if (const auto eq = h.equispaced_params()) {
    const auto bounds = equispaced_capacity_bounds(rho.spectrum(), eq->levels, eq->quantum);
    const auto dual = equispaced_duality(rho, h);
    ordered_json e;
    e["levels"] = eq->levels;
    e["quantum"] = energy(eq->quantum);
    e["lower_bound"] = energy(bounds.lower);
    e["upper_bound"] = energy(bounds.upper);
    e["passive_plus_active"] = energy(dual.sum);
    e["expected_sum"] = energy(dual.expected);
    out["equispaced"] = std::move(e);
  }
  return out;
}

ordered_json cmd_ergotropy(const Command& cmd) {
  const auto [rho, h] = load_inputs(cmd);
  const auto w = work_quantities(rho, h);
  const auto ext = extremal_states(rho, h);
  ordered_json out;
  out["command"] = "ergotropy";
  out["ergotropy"] = energy(w.ergotropy);
  out["antiergotropy"] = energy(w.antiergotropy);
  out["mean_energy"] = energy(w.mean_energy);
  out["passive_energy"] = energy(w.passive_energy);
  out["active_energy"] = energy(w.active_energy);
  out["passive_state"] = matrix_to_json(ext.passive.matrix());
  out["active_state"] = matrix_to_json(ext.active.matrix());
  return out;
}

ordered_json measures_json(const MultipartiteMeasures& m, std::size_t n) {
  ordered_json out;
  out["alpha"] = m.alpha;
  ordered_json gaps = ordered_json::array();
  const auto parts = bipartitions(n);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    ordered_json g;
    g["partition"] = partition_label(parts[i]);
    g["gap"] = energy(m.bipartite_gaps[i]);
    gaps.push_back(std::move(g));
  }
  out["bipartite_gaps"] = std::move(gaps);
  out["mbwcg"] = energy(m.mbwcg);
  out["abcg"] = energy(m.abcg);
  out["wcf"] = m.wcf ? energy(*m.wcf, "absolute^2") : ordered_json(nullptr);
  out["wcv"] = energy(m.wcv);
  return out;
}

ordered_json cmd_gap(const Command& cmd) {
  const auto [rho, h] = load_inputs(cmd);
  const auto r = gap_report(rho, h, cmd.alpha);
  ordered_json out;
  out["command"] = "gap";
  out["subsystems"] = rho.dims().size();
  out["global_capacity"] = energy(r.global_capacity);
  ordered_json locals = ordered_json::array();
  for (double c : r.local_capacities) locals.push_back(energy(c));
  out["local_capacities"] = std::move(locals);
  out["delta_in"] = energy(r.delta_in);
  out["delta_out"] = energy(r.delta_out);
  out["fully_separable_gap"] = energy(r.fully_separable_gap);
  ordered_json gaps = ordered_json::array();
  for (std::size_t i = 0; i < r.partitions.size(); ++i) {
    ordered_json g;
    g["partition"] = partition_label(r.partitions[i]);
    g["gap"] = energy(r.bipartite_gaps[i]);
    gaps.push_back(std::move(g));
  }
  out["bipartite_gaps"] = std::move(gaps);
  if (r.concurrence) out["concurrence"] = *r.concurrence;
  if (r.closed_form_gap_2q) out["closed_form_gap_2q"] = energy(*r.closed_form_gap_2q, "E");
  out["measures"] = r.measures ? measures_json(*r.measures, rho.dims().size()) : ordered_json("not computed");
  return out;
}

ordered_json cmd_multipartite(const Command& cmd) {
  const auto [rho, h] = load_inputs(cmd);
  const auto m = multipartite_measures(rho, h, cmd.alpha);
  ordered_json out;
  out["command"] = "multipartite";
  out["subsystems"] = rho.dims().size();
  const ordered_json body = measures_json(m, rho.dims().size());
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

ordered_json cmd_total(const Command& cmd) {
  const auto [rho, h] = load_inputs(cmd);
  const auto t = total_quantities(rho, h);
  const auto w = work_quantities(rho, h);
  ordered_json out;
  out["command"] = "total";
  out["total_ergotropy"] = energy(t.total_ergotropy);
  out["total_antiergotropy"] = energy(t.total_antiergotropy);
  out["total_capacity"] = energy(t.total_capacity);
  out["ergotropy"] = energy(w.ergotropy);
  out["antiergotropy"] = energy(w.antiergotropy);
  out["capacity"] = energy(w.capacity);
  out["beta"] = beta_value(t.beta);
  out["beta_negative"] = beta_value(t.beta_negative);
  out["entropy_nats"] = von_neumann_entropy(rho, std::exp(1.0)).value;
  return out;
}

std::string cmd_montecarlo(const Command& cmd, std::uint64_t seed, ordered_json& out) {
  const auto [rho, h] = load_inputs(cmd);
  if (cmd.samples < 1) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 1");
  if (cmd.csv) {
    const auto w = kernels::work_samples_omp(rho, h, seed, cmd.samples);
    std::string csv = "index,work\n";
    char buf[64];
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, w[i]);
      csv += buf;
    }
    return csv;
  }
  SampleConfig cfg;
  cfg.dim = rho.dim();
  cfg.n_samples = cmd.samples;
  cfg.seed = seed;
  const auto r = mc_work_variance(rho, h, cfg);
  const auto wq = work_quantities(rho, h);
  out["command"] = "montecarlo";
  out["seed"] = seed;
  out["samples"] = r.estimate.n;
  out["dim"] = rho.dim();
  out["mean_work"] = energy(r.estimate.mean);
  out["variance"] = energy(r.estimate.variance, "absolute^2");
  out["std_error_of_variance"] = energy(r.estimate.std_error_of_variance, "absolute^2");
  out["analytic_variance"] = energy(r.analytic_variance, "absolute^2");
  out["z_score"] = r.estimate.std_error_of_variance > 0.0
                       ? ordered_json((r.estimate.variance - r.analytic_variance) / r.estimate.std_error_of_variance)
                       : ordered_json(nullptr);
  out["min_work"] = energy(r.min_work);
  out["max_work"] = energy(r.max_work);
  out["antiergotropy"] = energy(wq.antiergotropy);
  out["ergotropy"] = energy(wq.ergotropy);
  out["popoviciu_bound"] = energy(wq.capacity * wq.capacity / 4.0, "absolute^2");
  return {};
}

ordered_json cmd_validate(const Command& cmd) {
  if (cmd.state_source.empty()) throw Error(ErrorCode::InvalidArgument, "--state is required");
  const DensityMatrix rho = state_from_json(load_json_source(cmd.state_source));
  ordered_json out;
  out["command"] = "validate";
  out["valid"] = true;
  out["dims"] = std::vector<std::size_t>(rho.dims().begin(), rho.dims().end());
  out["purity"] = rho.purity();
  out["spectrum"] = to_vector(rho.spectrum().values());
  return out;
}

std::string serialize(const ordered_json& doc, Format f) {
  return f == Format::Json ? doc.dump(2) + "\n" : render_text(doc);
}

Outcome failure(ErrorCode code, const std::string& msg) {
  std::string line = msg;
  for (auto& ch : line)
    if (ch == '\n') ch = ' ';
  return {is_numerical(code) ? 2 : 1, "error[" + std::string(code_name(code)) + "]: " + line + "\n"};
}

std::string dispatch(const Command& cmd) {
  const std::uint64_t seed = resolve_seed(cmd.seed);
  const auto& n = cmd.name;
  if (n == "capacity") return serialize(cmd_capacity(cmd), cmd.format);
  if (n == "ergotropy") return serialize(cmd_ergotropy(cmd), cmd.format);
  if (n == "gap") return serialize(cmd_gap(cmd), cmd.format);
  if (n == "multipartite") return serialize(cmd_multipartite(cmd), cmd.format);
  if (n == "total") return serialize(cmd_total(cmd), cmd.format);
  if (n == "validate") return serialize(cmd_validate(cmd), cmd.format);
  if (n == "montecarlo") {
    ordered_json out;
    std::string csv = cmd_montecarlo(cmd, seed, out);
    return cmd.csv ? csv : serialize(out, cmd.format);
  }
  if (n == "paper-report") {
    const auto report = paper_report(seed, cmd.samples);
    return cmd.format == Format::Json ? report.dump(2) + "\n" : render_markdown(report);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + n + "'");
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ERGOKIT_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "ERGOKIT_SEED is not an unsigned integer");
    return v;
  }
  return kDefaultSeed;
}

Outcome run_command(const Command& cmd) {
  try {
    std::string out = dispatch(cmd);
    if (cmd.out_path) {
      std::ofstream f(*cmd.out_path, std::ios::binary);
      if (!f) throw Error(ErrorCode::IoError, "cannot write \"" + *cmd.out_path + "\"");
      f << out;
    }
    return {0, std::move(out)};
  } catch (const Error& e) {
    return failure(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return failure(ErrorCode::ParseError, e.what());
  } catch (const std::exception& e) {
    return failure(ErrorCode::InvalidArgument, e.what());
  }
}

}  // namespace ergokit::cli
