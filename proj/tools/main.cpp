// kazhdanlab command line: reproducible experiment pipelines over the
// library, emitting machine-readable CSV/JSON reports plus a run manifest.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kazhdanlab/burnside.hpp"
#include "kazhdanlab/io.hpp"
#include "kazhdanlab/kazhdan.hpp"
#include "kazhdanlab/koopman.hpp"
#include "kazhdanlab/parallel.hpp"
#include "kazhdanlab/wang.hpp"

namespace kz = kazhdanlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct Common {
  std::string group;
  std::string spec;
  std::string out = ".";
  std::uint64_t seed = kz::kDefaultSeed;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  auto* g = cmd->add_option("--group", c.group,
                            "Builtin group name (Z_n, D_n, S3, S4, A4, Q8)");
  auto* s = cmd->add_option("--spec", c.spec, "Path to a GroupSpec JSON file");
  g->excludes(s);
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "RNG seed")
      ->envname("KAZHDANLAB_SEED")
      ->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads for grid subcommands")
      ->capture_default_str();
}

kz::GroupPtr load_group(const Common& c) {
  if (!c.spec.empty()) return kz::build_group(kz::load_group_spec(c.spec));
  if (!c.group.empty()) return kz::builtin_group(c.group);
  throw kz::ConfigError("pass --group <builtin> or --spec <file>");
}

json base_config(const Common& c, const kz::GroupPtr& g) {
  json j;
  j["group"] = g->name();
  j["spec"] = c.spec;
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  return j;
}

// Writes the report files plus manifest.json. The manifest hashes the
// canonical config (which never includes the output directory), so two runs
// of the same config into different directories are byte-identical.
void emit(const Common& c, const std::string& subcommand, const json& config,
          const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(c.out);
  for (const auto& [name, content] : files)
    kz::write_file((fs::path(c.out) / name).string(), content);
  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool"] = "kazhdanlab";
  manifest["version"] = kToolVersion;
  manifest["subcommand"] = subcommand;
  manifest["seed"] = c.seed;
  manifest["config"] = config;
  manifest["config_hash"] = kz::stable_hash_hex(config.dump());
  kz::write_file((fs::path(c.out) / "manifest.json").string(), manifest.dump(2) + "\n");
}

json complex_json(const kz::cd& z) { return json::array({z.real(), z.imag()}); }

json vec_json(const kz::Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json character_json(const kz::UnitaryRep& rep) {
  json out = json::array();
  for (const kz::cd& c : rep.character()) out.push_back(complex_json(c));
  return out;
}

json goodness_json(const kz::GoodnessReport& g) {
  json j;
  j["radius"] = g.radius;
  j["max_gap"] = g.max_gap;
  j["epsilon"] = g.epsilon;
  j["good"] = g.good;
  return j;
}

json synthesis_json(const kz::SynthesisSystem& s) {
  json j;
  j["k_sigma"] = s.cert.k_sigma;
  j["ranks"] = s.cert.ranks;
  j["lower_bound"] = s.cert.lower_bound;
  j["upper_bound"] = s.cert.upper_bound;
  j["M"] = s.M;
  j["M_global_upper"] = s.M_global_upper;
  j["M_global_lower"] = s.M_global_lower;
  json norms = json::array();
  for (const auto& f : s.f) norms.push_back(f.l1_norm());
  j["f_l1_norms"] = std::move(norms);
  return j;
}

json certificate_json(const kz::DecompositionCertificate& cert,
                      const kz::IrrepTable* table) {
  json comps = json::array();
  for (const auto& comp : cert.components) {
    json c;
    c["dim"] = comp.irrep.dim();
    c["multiplicity"] = comp.multiplicity;
    if (table) {
      std::string name = "unknown";
      for (std::size_t i = 0; i < table->irreps.size(); ++i)
        if (table->irreps[i].dim() == comp.irrep.dim() &&
            kz::character_distance(table->irreps[i], comp.irrep) < 1e-8)
          name = table->names[i];
      c["irrep"] = name;
    }
    comps.push_back(std::move(c));
  }
  json j;
  j["components"] = std::move(comps);
  j["residual"] = cert.residual;
  j["seed"] = cert.seed;
  return j;
}

std::string characters_csv(const kz::IrrepTable& table) {
  std::ostringstream csv;
  csv << "irrep,dim,element,word_length,re,im\n";
  for (std::size_t i = 0; i < table.irreps.size(); ++i) {
    const auto chi = table.irreps[i].character();
    for (int g = 0; g < table.group->order(); ++g)
      csv << table.names[i] << ',' << table.irreps[i].dim() << ',' << g << ','
          << table.group->word_length(g) << ',' << kz::fmt(chi[g].real()) << ','
          << kz::fmt(chi[g].imag()) << '\n';
  }
  return csv.str();
}

// ---------------------------------------------------------------------------

int run_irreps(const Common& c) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = g->name();
  j["order"] = g->order();
  j["gen_set"] = g->gen_set();
  j["seed"] = c.seed;
  json irreps = json::array();
  for (std::size_t i = 0; i < table.irreps.size(); ++i) {
    json e;
    e["id"] = table.names[i];
    e["dim"] = table.irreps[i].dim();
    e["aliases"] = table.aliases[i];
    e["character"] = character_json(table.irreps[i]);
    irreps.push_back(std::move(e));
  }
  j["irreps"] = std::move(irreps);
  emit(c, "irreps", base_config(c, g),
       {{"irreps.json", j.dump(2) + "\n"}, {"characters.csv", characters_csv(table)}});
  return 0;
}

int run_burnside(const Common& c, int global_samples) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  std::ostringstream csv;
  csv << "group,irrep,d,S_size,k_sigma,lower_bound,upper_bound,M,M_global_upper\n";
  json detail = json::array();
  for (std::size_t i = 0; i < table.irreps.size(); ++i) {
    const kz::UnitaryRep& sigma = table.irreps[i];
    const kz::Vec v = kz::Vec::Unit(sigma.dim(), 0);
    const kz::SynthesisSystem syn =
        kz::recovery_constant(sigma, v, c.seed, global_samples);
    csv << g->name() << ',' << table.names[i] << ',' << sigma.dim() << ','
        << g->gen_set().size() << ',' << syn.cert.k_sigma << ','
        << kz::fmt(syn.cert.lower_bound) << ',' << syn.cert.upper_bound << ','
        << kz::fmt(syn.M) << ',' << kz::fmt(syn.M_global_upper) << '\n';
    json e = synthesis_json(syn);
    e["irrep"] = table.names[i];
    e["d"] = sigma.dim();
    detail.push_back(std::move(e));
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = g->name();
  j["seed"] = c.seed;
  j["global_samples"] = global_samples;
  j["irreps"] = std::move(detail);
  json config = base_config(c, g);
  config["global_samples"] = global_samples;
  emit(c, "burnside", config,
       {{"burnside.csv", csv.str()}, {"burnside.json", j.dump(2) + "\n"}});
  return 0;
}

int run_kazhdan(const Common& c, int samples) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  const kz::KazhdanPair pair = kz::kazhdan_pair(table);

  // Brute-force lower bound: min over sampled unit vectors, per nontrivial
  // irrep, of the generator displacement.
  double brute = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.irreps.size(); ++i) {
    const kz::UnitaryRep& sigma = table.irreps[i];
    bool trivial = sigma.dim() == 1 &&
                   kz::character_distance(sigma, kz::trivial_rep(g)) < 1e-8;
    if (trivial) continue;
    std::vector<double> chunk_min(static_cast<std::size_t>(c.jobs) * 64,
                                  std::numeric_limits<double>::infinity());
    const int chunks = static_cast<int>(chunk_min.size());
    const int per_chunk = (samples + chunks - 1) / chunks;
    kz::parallel_for(chunks, c.jobs, [&](int chunk) {
      kz::Rng rng = kz::Rng::stream(c.seed, 7000 + i * 100000 + chunk);
      double local = std::numeric_limits<double>::infinity();
      for (int t = 0; t < per_chunk; ++t)
        local = std::min(local, kz::displacement(sigma, rng.unit_vector(sigma.dim())));
      chunk_min[chunk] = local;
    });
    for (double v : chunk_min) brute = std::min(brute, v);
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = g->name();
  j["S"] = pair.gen_set;
  j["epsilon0"] = pair.epsilon0;
  j["lambda_min"] = pair.lambda_min;
  j["witness_irrep"] = pair.witness_name;
  j["bruteforce_lowerbound"] = brute;
  j["clamped"] = pair.clamped;
  j["samples"] = samples;
  j["seed"] = c.seed;
  if (pair.epsilon0 > brute + 1e-6)
    throw kz::NumericalDegeneracy("epsilon0 exceeds the brute-force displacement bound");
  json config = base_config(c, g);
  config["samples"] = samples;
  emit(c, "kazhdan", config, {{"kazhdan.json", j.dump(2) + "\n"}});
  return 0;
}

struct RecoverInstance {
  kz::UnitaryRep pi;
  kz::PositiveDefiniteFunction phi;
  kz::SynthesisSystem synthesis;
  kz::Vec embedded_v;  // v embedded in pi's space (sigma block first)
};

// pi = sigma (+) every other irrep once; v is a seeded random unit vector.
RecoverInstance make_instance(const kz::IrrepTable& table, int irrep_index,
                              std::uint64_t seed) {
  const kz::UnitaryRep& sigma = table.irreps[irrep_index];
  std::vector<std::pair<kz::UnitaryRep, int>> parts{{sigma, 1}};
  for (std::size_t i = 0; i < table.irreps.size(); ++i)
    if (static_cast<int>(i) != irrep_index) parts.emplace_back(table.irreps[i], 1);
  kz::UnitaryRep pi = kz::direct_sum(parts);
  const kz::Vec v = kz::Rng::stream(seed, 11).unit_vector(sigma.dim());
  kz::Vec embedded = kz::Vec::Zero(pi.dim());
  embedded.head(sigma.dim()) = v;
  kz::PositiveDefiniteFunction phi(sigma, v);
  kz::SynthesisSystem syn = kz::recovery_constant(sigma, v, seed);
  return {std::move(pi), std::move(phi), std::move(syn), std::move(embedded)};
}

kz::Vec perturbed_unit(const kz::Vec& base, const kz::Vec& direction, double t) {
  kz::Vec x = base + t * direction;
  return x / x.norm();
}

json recovery_json(const kz::RecoveryResult& r, const kz::IrrepTable* table, bool trace) {
  json j;
  j["status"] = "success";
  j["delta"] = r.delta;
  j["epsilon0"] = r.epsilon0;
  j["epsilon_used"] = r.epsilon_used;
  j["radius_mode"] =
      r.radius_mode == kz::RadiusMode::by_k_sigma ? "k_sigma" : "d_squared";
  j["goodness"] = goodness_json(r.goodness);
  j["synthesis"] = synthesis_json(r.synthesis);
  j["eta_norm2_min"] = r.eta_norm2_min;
  j["eta_norm2_max"] = r.eta_norm2_max;
  j["eta_norm2_bounds"] = json::array({0.5, 1.5});
  j["xi_norm2"] = r.xi_norm2;
  j["xi_norm2_bounds"] =
      json::array({0.5 * r.synthesis.basis.cols(), 1.5 * r.synthesis.basis.cols()});
  j["displacement_sq_max"] = r.displacement_sq_max;
  j["displacement_sq_bound"] = r.displacement_sq_bound;
  j["displacement_sq_bound_rel"] = r.displacement_sq_bound_rel;
  j["xi_dist2"] = r.xi_dist2;
  j["xi_dist2_bound"] = r.xi_dist2_bound;
  j["intertwining_residual"] = r.intertwining_residual;
  j["x_dprime_dist"] = r.x_dprime_dist;
  j["x_dprime_bound"] = 0.5 * r.delta;
  j["distance"] = r.distance;
  j["distance_bound"] = r.delta;
  j["span_dim"] = r.span_dim;
  j["char_distance_to_sigma"] = r.char_distance_to_sigma;
  if (r.subrep) j["subrep"] = certificate_json(*r.subrep, table);
  if (trace) {
    json t;
    json eta_norms = json::array();
    for (const auto& e : r.eta) eta_norms.push_back(e.squaredNorm());
    t["eta_norms2"] = std::move(eta_norms);
    json zeta_norms = json::array();
    for (const auto& z : r.zeta) zeta_norms.push_back(z.norm());
    t["zeta_norms"] = std::move(zeta_norms);
    t["xi"] = vec_json(r.xi);
    t["xi_prime"] = vec_json(r.xi_prime);
    t["x_dprime"] = vec_json(r.x_dprime);
    t["x_prime"] = vec_json(r.x_prime);
    j["trace"] = std::move(t);
  }
  return j;
}

int run_recover(const Common& c, const std::string& irrep, double delta,
                double perturbation, const std::string& radius_mode, bool trace) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  const int idx = table.index_of(irrep);
  if (idx < 0) throw kz::ConfigError("unknown irrep '" + irrep + "'; see `irreps`");
  const kz::RadiusMode mode = radius_mode == "d_squared"
                                  ? kz::RadiusMode::by_d_squared
                                  : kz::RadiusMode::by_k_sigma;
  const kz::KazhdanPair pair = kz::kazhdan_pair(table);
  RecoverInstance inst = make_instance(table, idx, c.seed);
  const kz::Vec direction = kz::Rng::stream(c.seed, 12).unit_vector(inst.pi.dim());
  const kz::Vec x = perturbed_unit(inst.embedded_v, direction, perturbation);

  json config = base_config(c, g);
  config["irrep"] = irrep;
  config["delta"] = delta;
  config["perturbation"] = perturbation;
  config["radius_mode"] = radius_mode;
  config["trace"] = trace;

  try {
    const kz::RecoveryResult r =
        kz::recover(inst.pi, x, inst.phi, delta, pair, mode, &inst.synthesis, c.seed);
    json j = recovery_json(r, &table, trace);
    j["schema_version"] = kSchemaVersion;
    j["group"] = g->name();
    j["irrep"] = table.names[idx];
    emit(c, "recover", config, {{"recover.json", j.dump(2) + "\n"}});
    return 0;
  } catch (const kz::NotGood& e) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["group"] = g->name();
    j["irrep"] = table.names[idx];
    j["status"] = "not_good";
    j["max_gap"] = e.max_gap();
    j["epsilon"] = e.epsilon();
    j["message"] = e.what();
    emit(c, "recover", config, {{"recover.json", j.dump(2) + "\n"}});
    std::cerr << "recover: " << e.what() << "\n";
    return 1;
  }
}

int run_sweep(const Common& c, const std::string& irrep, std::vector<double> deltas,
              std::vector<double> perturbations) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  const int idx = table.index_of(irrep);
  if (idx < 0) throw kz::ConfigError("unknown irrep '" + irrep + "'; see `irreps`");
  const kz::KazhdanPair pair = kz::kazhdan_pair(table);
  RecoverInstance inst = make_instance(table, idx, c.seed);
  const kz::Vec direction = kz::Rng::stream(c.seed, 12).unit_vector(inst.pi.dim());

  struct Row {
    double delta, perturbation, epsilon, max_gap;
    bool good, recovered;
    double distance;
  };
  const int n = static_cast<int>(deltas.size() * perturbations.size());
  std::vector<Row> rows(n);
  std::string first_failure;
  std::mutex failure_mutex;
  kz::parallel_for(n, c.jobs, [&](int i) {
    const double delta = deltas[i / perturbations.size()];
    const double t = perturbations[i % perturbations.size()];
    const kz::Vec x = perturbed_unit(inst.embedded_v, direction, t);
    const double eps = kz::epsilon_for(inst.phi, delta, pair, inst.synthesis.M);
    const kz::GoodnessReport good = kz::is_good(inst.pi, x, inst.phi, eps,
                                                kz::RadiusMode::by_k_sigma,
                                                inst.synthesis.cert.k_sigma);
    Row row{delta, t, eps, good.max_gap, good.good, false, -1.0};
    if (good.good) {
      try {
        const kz::RecoveryResult r = kz::recover(inst.pi, x, inst.phi, delta, pair,
                                                 kz::RadiusMode::by_k_sigma,
                                                 &inst.synthesis, c.seed);
        row.recovered = true;
        row.distance = r.distance;
      } catch (const kz::Error& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (first_failure.empty()) first_failure = e.what();
      }
    }
    rows[i] = row;
  });

  std::ostringstream csv;
  csv << "delta,perturbation,epsilon,max_gap,good,recovered,distance\n";
  for (const Row& r : rows)
    csv << kz::fmt(r.delta) << ',' << kz::fmt(r.perturbation) << ','
        << kz::fmt(r.epsilon) << ',' << kz::fmt(r.max_gap) << ',' << (r.good ? 1 : 0)
        << ',' << (r.recovered ? 1 : 0) << ','
        << (r.recovered ? kz::fmt(r.distance) : "") << '\n';

  json config = base_config(c, g);
  config["irrep"] = irrep;
  config["delta_grid"] = deltas;
  config["perturbation_grid"] = perturbations;
  emit(c, "sweep-recover", config, {{"sweep.csv", csv.str()}});
  if (!first_failure.empty())
    throw kz::NumericalDegeneracy("goodness held but recovery failed: " + first_failure);
  return 0;
}

int run_koopman(const Common& c, int n_max, int p_max) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  const int r = static_cast<int>(table.irreps.size());
  if (n_max <= 0) n_max = r;
  auto [space, rep] = kz::koopman_build(table, n_max, p_max);
  const kz::UnitaryRep rep0 = kz::koopman_of_action(g, space.action);

  std::ostringstream blocks;
  blocks << "n,p,block_order,weight\n";
  for (const auto& b : space.blocks)
    blocks << b.n << ',' << b.p << ',' << b.block_order << ',' << kz::fmt(b.weight)
           << '\n';

  // Single-block pullbacks lambda_n . sigma_n give the predicted decomposition.
  std::vector<kz::UnitaryRep> pullbacks;
  std::vector<kz::cd> predicted_char(g->order(), kz::cd(0.0, 0.0));
  for (int n = 1; n <= n_max; ++n) {
    kz::PermutationAction block;
    const auto& kb = space.blocks[static_cast<std::size_t>(n - 1) * p_max];
    block.points = kb.block_order;
    block.weights.assign(block.points, 1.0 / block.points);
    const int offset = [&] {
      int off = 0;
      for (const auto& b : space.blocks) {
        if (b.n == n && b.p == 1) return off;
        off += b.block_order;
      }
      return off;
    }();
    for (std::size_t si = 0; si < g->gen_set().size(); ++si) {
      std::vector<int> perm(block.points);
      for (int pt = 0; pt < block.points; ++pt)
        perm[pt] = space.action.perms[si][offset + pt] - offset;
      block.perms.push_back(std::move(perm));
    }
    pullbacks.push_back(kz::l2_rep_of_action(g, block));
    const auto chi = pullbacks.back().character();
    for (int e = 0; e < g->order(); ++e)
      predicted_char[e] += static_cast<double>(p_max) * chi[e];
  }
  const auto actual_char = rep.character();
  double char_residual = 0.0;
  for (int e = 0; e < g->order(); ++e)
    char_residual = std::max(char_residual, std::abs(actual_char[e] - predicted_char[e]));

  json mults = json::array();
  for (int i = 0; i < r; ++i) {
    json m;
    m["irrep"] = table.names[i];
    m["dim"] = table.irreps[i].dim();
    m["in_L2"] = kz::multiplicity(rep, table.irreps[i]);
    m["in_L2_0"] = rep0.dim() > 0 ? kz::multiplicity(rep0, table.irreps[i]) : 0;
    int predicted = 0;
    for (const auto& pb : pullbacks) predicted += kz::multiplicity(pb, table.irreps[i]);
    m["predicted"] = p_max * predicted;
    mults.push_back(std::move(m));
  }
  json containment = json::array();
  for (int n = 1; n <= n_max; ++n) {
    const auto report = kz::verify_subrep_containment(table.irreps[n - 1]);
    json e;
    e["irrep"] = table.names[n - 1];
    e["image_order"] = report.image_order;
    e["mult_in_pullback"] = report.mult_in_pullback;
    e["holds"] = report.holds;
    if (!report.holds)
      throw kz::NumericalDegeneracy("sigma_n not contained in its pullback");
    containment.push_back(std::move(e));
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["group"] = g->name();
  j["n_max"] = n_max;
  j["p_max"] = p_max;
  j["dim_L2"] = rep.dim();
  j["dim_L2_0"] = rep0.dim();
  j["total_weight"] = space.total_weight;
  j["char_residual"] = char_residual;
  j["multiplicities"] = std::move(mults);
  j["subrep_containment"] = std::move(containment);
  j["seed"] = c.seed;
  if (char_residual > 1e-8)
    throw kz::NumericalDegeneracy("Koopman character mismatch above 1e-8");

  json config = base_config(c, g);
  config["n_max"] = n_max;
  config["p_max"] = p_max;
  emit(c, "koopman", config,
       {{"blocks.csv", blocks.str()}, {"koopman.json", j.dump(2) + "\n"}});
  return 0;
}

int run_decompose(const Common& c, const std::string& rep_path) {
  const kz::GroupPtr g = load_group(c);
  const kz::IrrepTable table = kz::irrep_table(g, c.seed);
  const kz::UnitaryRep rep =
      rep_path.empty() ? kz::regular_rep(g) : kz::load_rep(g, rep_path);
  const kz::DecompositionCertificate cert = kz::decompose_irreps(rep, c.seed);
  json j = certificate_json(cert, &table);
  j["schema_version"] = kSchemaVersion;
  j["group"] = g->name();
  j["dim"] = rep.dim();
  j["source"] = rep_path.empty() ? "regular" : rep_path;
  json config = base_config(c, g);
  config["rep"] = rep_path;
  emit(c, "decompose", config,
       {{"decomposition.json", j.dump(2) + "\n"}, {"characters.csv", characters_csv(table)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kazhdanlab: quantitative finite-group representation checks"};
  app.require_subcommand(1);

  Common c_irreps, c_burnside, c_kazhdan, c_recover, c_sweep, c_koopman, c_decompose;

  auto* cmd_irreps = app.add_subcommand("irreps", "Irreducible decomposition of the regular rep");
  add_common(cmd_irreps, c_irreps);

  auto* cmd_burnside =
      app.add_subcommand("burnside", "Burnside index and synthesis constants per irrep");
  add_common(cmd_burnside, c_burnside);
  int global_samples = 1000;
  cmd_burnside->add_option("--global-samples", global_samples,
                           "Samples for the global M diagnostic")
      ->capture_default_str();

  auto* cmd_kazhdan = app.add_subcommand("kazhdan", "Kazhdan pair for the group");
  add_common(cmd_kazhdan, c_kazhdan);
  int kazhdan_samples = 10000;
  cmd_kazhdan->add_option("--samples", kazhdan_samples,
                          "Random vectors per irrep for the brute-force bound")
      ->capture_default_str();

  auto* cmd_recover = app.add_subcommand("recover", "Run the recovery algorithm once");
  add_common(cmd_recover, c_recover);
  std::string recover_irrep;
  double recover_delta = 0.5, recover_perturbation = 0.0;
  std::string recover_radius = "k_sigma";
  bool recover_trace = false;
  cmd_recover->add_option("--irrep", recover_irrep, "Target irrep id or alias")->required();
  cmd_recover->add_option("--delta", recover_delta, "delta in (0,1)")->capture_default_str();
  cmd_recover->add_option("--perturbation", recover_perturbation,
                          "Perturbation scale t for x = normalize(v + t u)")
      ->capture_default_str();
  cmd_recover->add_option("--radius-mode", recover_radius, "k_sigma | d_squared")
      ->check(CLI::IsMember({"k_sigma", "d_squared"}))
      ->capture_default_str();
  cmd_recover->add_flag("--trace", recover_trace, "Dump every intermediate vector");

  auto* cmd_sweep =
      app.add_subcommand("sweep-recover", "Goodness/recovery sweep over a grid");
  add_common(cmd_sweep, c_sweep);
  std::string sweep_irrep;
  std::vector<double> sweep_deltas{0.1, 0.3, 0.5};
  std::vector<double> sweep_perturbations{0.0,   1e-5, 3e-5, 1e-4, 3e-4, 1e-3,
                                          3e-3,  1e-2, 3e-2, 1e-1};
  cmd_sweep->add_option("--irrep", sweep_irrep, "Target irrep id or alias")->required();
  cmd_sweep->add_option("--delta-grid", sweep_deltas, "delta values")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--perturbation-grid", sweep_perturbations, "perturbation values")
      ->delimiter(',')
      ->capture_default_str();

  auto* cmd_koopman = app.add_subcommand("koopman", "Koopman construction at a truncation");
  add_common(cmd_koopman, c_koopman);
  int n_max = 0, p_max = 1;
  cmd_koopman->add_option("--n-max", n_max, "Irreps to include (0 = all)")
      ->capture_default_str();
  cmd_koopman->add_option("--p-max", p_max, "Copies per irrep block")->capture_default_str();

  auto* cmd_decompose = app.add_subcommand("decompose", "Decompose a representation");
  add_common(cmd_decompose, c_decompose);
  std::string rep_path;
  cmd_decompose->add_option("--rep", rep_path,
                            "Representation JSON (defaults to the regular rep)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_irreps->parsed()) return run_irreps(c_irreps);
    if (cmd_burnside->parsed()) return run_burnside(c_burnside, global_samples);
    if (cmd_kazhdan->parsed()) return run_kazhdan(c_kazhdan, kazhdan_samples);
    if (cmd_recover->parsed())
      return run_recover(c_recover, recover_irrep, recover_delta, recover_perturbation,
                         recover_radius, recover_trace);
    if (cmd_sweep->parsed())
      return run_sweep(c_sweep, sweep_irrep, sweep_deltas, sweep_perturbations);
    if (cmd_koopman->parsed()) return run_koopman(c_koopman, n_max, p_max);
    if (cmd_decompose->parsed()) return run_decompose(c_decompose, rep_path);
  } catch (const kz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
