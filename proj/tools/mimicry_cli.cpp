#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bandlim/correlation.hpp"
#include "bandlim/emit.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/mimicry.hpp"
#include "bandlim/obstruction.hpp"
#include "bandlim/samplers.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFinding = 1;  // counterexample or moment violation
constexpr int kExitUsage = 2;

json load_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string s = argv[i];
    if (s == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (s.rfind("--config=", 0) == 0)
      path = s.substr(9);
  }
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  in >> j;
  if (!j.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
  return j;
}

template <typename T>
void seed_default(const json& cfg, const char* key, T& var) {
  if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

void seed_window(const json& cfg, bandlim::Window& w) {
  if (!cfg.contains("window")) return;
  const auto& arr = cfg.at("window");
  if (!arr.is_array() || arr.size() != 2)
    throw CLI::ValidationError("--config", "window must be a two-element array");
  w.lo = arr[0].get<double>();
  w.hi = arr[1].get<double>();
}

bandlim::ProcessKind continuous_kind(const std::string& family) {
  if (family == "poisson") return bandlim::ProcessKind::poisson_continuous;
  if (family == "sine") return bandlim::ProcessKind::sine_continuous;
  throw CLI::ValidationError("--family", "expected poisson or sine");
}

bandlim::CorrelationStructure continuous_structure(const std::string& family, double lambda) {
  if (family == "poisson") return bandlim::CorrelationStructure::poisson_continuous(lambda);
  return bandlim::CorrelationStructure::sine_continuous();
}

bandlim::CorrelationStructure lattice_structure(const std::string& family, double a,
                                                double lambda) {
  if (family == "poisson") return bandlim::CorrelationStructure::poisson_lattice(a, lambda);
  return bandlim::CorrelationStructure::sine_lattice(a);
}

bandlim::SamplerFn build_sampler(const std::string& family, bool lattice, double a, double lambda,
                                 bandlim::Window window, double delta) {
  if (family == "poisson" && !lattice)
    return [lambda, window](bandlim::RngState& rng) {
      return bandlim::sample_poisson(lambda, window, rng);
    };
  if (family == "poisson")
    return [a, lambda, window](bandlim::RngState& rng) {
      return bandlim::sample_discrete_poisson(a, lambda, window, rng);
    };
  if (!lattice) {
    auto s = std::make_shared<bandlim::ContinuousSineSampler>(window, delta);
    return [s](bandlim::RngState& rng) { return s->sample(rng); };
  }
  const long long hi = static_cast<long long>(std::floor(window.hi / a + 1e-12));
  const long long lo = static_cast<long long>(std::ceil(window.lo / a - 1e-12));
  if (lo != -hi)
    throw CLI::ValidationError("--window", "lattice determinantal sampling needs a symmetric window");
  auto s = std::make_shared<bandlim::DiscreteSineSampler>(a, static_cast<int>(hi - lo + 1));
  return [s](bandlim::RngState& rng) { return s->sample(rng); };
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("output", "cannot open " + path);
  return out;
}

json entry_json(const bandlim::MimicryEntry& e) {
  return json{{"level", e.level},           {"label", e.label},
              {"value_a", e.value_a},       {"value_b", e.value_b},
              {"discrepancy", e.discrepancy}, {"se", e.se},
              {"threshold", e.threshold},   {"monte_carlo", e.monte_carlo},
              {"pass", e.pass}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band-limited mimicry toolkit for point processes on a line or a lattice"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option defaults (flags given win)")
      ->expected(1);

  json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitUsage;
  }

  // shared option state, seeded from the config file
  std::string family = "poisson";
  double spacing = 1.0;
  double lambda = 1.0;
  double bandwidth = 1.0;
  int levels = 2;
  long long replicas = 10000;
  std::uint64_t seed = 0;
  bandlim::Window window{-20.0, 20.0};
  double delta = 0.1;
  int threads = 0;
  seed_default(cfg, "family", family);
  seed_default(cfg, "spacing", spacing);
  seed_default(cfg, "lambda", lambda);
  seed_default(cfg, "bandwidth", bandwidth);
  seed_default(cfg, "levels", levels);
  seed_default(cfg, "replicas", replicas);
  seed_default(cfg, "seed", seed);
  seed_default(cfg, "delta", delta);
  seed_default(cfg, "threads", threads);
  seed_window(cfg, window);

  // ---- phi ----
  auto* phi = app.add_subcommand("phi", "limit of a factorial moment of the two-window count");
  int phi_order = 2;
  std::string phi_route = "closed";
  seed_default(cfg, "order", phi_order);
  seed_default(cfg, "route", phi_route);
  phi->add_option("--order", phi_order, "moment order")->check(CLI::Range(1, 8));
  phi->add_option("--spacing", spacing, "lattice spacing a");
  phi->add_option("--route", phi_route, "closed (orders 1..4) or cycle (orders 1..8)")
      ->check(CLI::IsMember({"closed", "cycle"}));

  // ---- fnu ----
  auto* fnu = app.add_subcommand("fnu", "cyclic overlap integral over the unit cell");
  int fnu_order = 2;
  double fnu_r = 0.5;
  int fnu_grid = 4001;
  std::string fnu_route = "closed";
  seed_default(cfg, "grid", fnu_grid);
  fnu->add_option("--order", fnu_order, "cycle length")->check(CLI::Range(1, 8));
  fnu->add_option("--r", fnu_r, "overlap radius");
  fnu->add_option("--route", fnu_route, "closed (lengths 1..4) or numeric")
      ->check(CLI::IsMember({"closed", "numeric"}));
  fnu->add_option("--grid", fnu_grid, "grid cells for the numeric route");

  // ---- region ----
  auto* region = app.add_subcommand("region", "classify a grid of (spacing, bandwidth) pairs");
  double a_max = 2.0, b_max = 3.0, step = 0.01;
  std::string region_csv, region_svg;
  seed_default(cfg, "a-max", a_max);
  seed_default(cfg, "b-max", b_max);
  seed_default(cfg, "step", step);
  region->add_option("--family", family, "poisson or sine")
      ->check(CLI::IsMember({"poisson", "sine"}));
  region->add_option("--a-max", a_max, "largest spacing");
  region->add_option("--b-max", b_max, "largest bandwidth");
  region->add_option("--step", step, "grid step");
  region->add_option("--csv", region_csv, "CSV output path")->required();
  region->add_option("--svg", region_svg, "optional SVG map path");

  // ---- verify ----
  auto* verify = app.add_subcommand(
      "verify", "compare the continuous structure against its lattice mirror over a test battery");
  bool verify_mc = false;
  std::string verify_json;
  verify->add_option("--family", family, "poisson or sine")
      ->check(CLI::IsMember({"poisson", "sine"}));
  verify->add_option("--spacing", spacing, "lattice spacing a");
  verify->add_option("--bandwidth", bandwidth, "band cap B");
  verify->add_option("--levels", levels, "highest correlation level")->check(CLI::Range(1, 3));
  verify->add_option("--lambda", lambda, "poisson intensity");
  verify->add_flag("--mc", verify_mc, "sample the lattice side instead of summing it");
  verify->add_option("--replicas", replicas, "Monte Carlo replicas");
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_option("--window", [&window](const std::vector<std::string>& vals) {
    window.lo = std::stod(vals.at(0));
    window.hi = std::stod(vals.at(1));
    return true;
  }, "sampling window lo hi")->expected(2);
  verify->add_option("--delta", delta, "grid step for continuous determinantal sampling");
  verify->add_option("--threads", threads, "worker threads (0: MIMICRY_THREADS or hardware)");
  verify->add_option("--json", verify_json, "write the full verdict to this JSON file");

  // ---- reconstruct ----
  auto* rec = app.add_subcommand(
      "reconstruct", "lattice atom forced by band-limited agreement above the Nyquist band");
  std::vector<double> rec_k;
  double rec_eps = 0.0;
  rec->add_option("--family", family, "poisson or sine")
      ->check(CLI::IsMember({"poisson", "sine"}));
  rec->add_option("--spacing", spacing, "lattice spacing a");
  rec->add_option("--bandwidth", bandwidth, "band cap B (must exceed 1/(2a))");
  rec->add_option("--lambda", lambda, "poisson intensity");
  rec->add_option("--k", rec_k, "atom position tuple (1 to 3 coordinates)")
      ->required()
      ->expected(1, 3);
  rec->add_option("--eps", rec_eps, "override the transition half-width");

  // ---- obstruction ----
  auto* obs = app.add_subcommand(
      "obstruction", "moment evidence that no lattice process carries the sine atoms");
  obs->add_option("--spacing", spacing, "lattice spacing a");

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "draw configurations and emit them as CSV");
  bool on_lattice = false;
  long long sample_replicas = 1;
  std::string sample_out;
  sample->add_option("--family", family, "poisson or sine")
      ->check(CLI::IsMember({"poisson", "sine"}));
  sample->add_flag("--lattice", on_lattice, "sample the lattice variant");
  sample->add_option("--spacing", spacing, "lattice spacing a");
  sample->add_option("--lambda", lambda, "poisson intensity");
  sample->add_option("--window", [&window](const std::vector<std::string>& vals) {
    window.lo = std::stod(vals.at(0));
    window.hi = std::stod(vals.at(1));
    return true;
  }, "window lo hi")->expected(2);
  sample->add_option("--delta", delta, "grid step for continuous determinantal sampling");
  sample->add_option("--replicas", sample_replicas, "number of configurations");
  sample->add_option("--seed", seed, "seed");
  sample->add_option("--out", sample_out, "CSV path (default stdout)");

  // ---- paircorr ----
  auto* pc = app.add_subcommand("paircorr", "empirical ordered-pair separation rates");
  bandlim::PairCorrelationOptions pc_opt;
  std::string pc_out;
  seed_default(cfg, "bin", pc_opt.bin_width);
  seed_default(cfg, "max-sep", pc_opt.max_separation);
  seed_default(cfg, "buffer", pc_opt.buffer);
  pc->add_option("--family", family, "poisson or sine")
      ->check(CLI::IsMember({"poisson", "sine"}));
  pc->add_flag("--lattice", on_lattice, "sample the lattice variant");
  pc->add_option("--spacing", spacing, "lattice spacing a");
  pc->add_option("--lambda", lambda, "poisson intensity");
  pc->add_option("--window", [&window](const std::vector<std::string>& vals) {
    window.lo = std::stod(vals.at(0));
    window.hi = std::stod(vals.at(1));
    return true;
  }, "window lo hi")->expected(2);
  pc->add_option("--delta", delta, "grid step for continuous determinantal sampling");
  pc->add_option("--replicas", pc_opt.replicas, "replicas");
  pc->add_option("--seed", pc_opt.seed, "seed");
  pc->add_option("--bin", pc_opt.bin_width, "bin width (0: spacing on lattices, 0.05 otherwise)");
  pc->add_option("--max-sep", pc_opt.max_separation, "largest separation recorded");
  pc->add_option("--buffer", pc_opt.buffer, "edge strip excluded for the left point");
  pc->add_option("--threads", pc_opt.threads, "worker threads");
  pc->add_option("--out", pc_out, "CSV path (default stdout)");
  seed_default(cfg, "replicas", pc_opt.replicas);
  seed_default(cfg, "seed", pc_opt.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      app.exit(e);
      return kExitPass;
    }
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*phi) {
      if (phi_route == "closed" && phi_order > 4)
        throw CLI::ValidationError("--order", "closed route covers orders 1..4");
      const auto route =
          phi_route == "closed" ? bandlim::PhiRoute::closed : bandlim::PhiRoute::cycle;
      const double value = bandlim::phi_limit(phi_order, spacing, route);
      std::cout << json{{"order", phi_order},
                        {"spacing", spacing},
                        {"route", phi_route},
                        {"value", value}}
                       .dump()
                << "\n";
      return kExitPass;
    }

    if (*fnu) {
      double value;
      if (fnu_route == "closed") {
        if (fnu_order > 4) throw CLI::ValidationError("--order", "closed route covers lengths 1..4");
        value = bandlim::cycle_integral_closed(fnu_order, fnu_r);
      } else {
        value = bandlim::cycle_integral_numeric(fnu_order, fnu_r, fnu_grid);
      }
      std::cout << json{{"order", fnu_order},
                        {"r", fnu_r},
                        {"route", fnu_route},
                        {"grid", fnu_grid},
                        {"value", value}}
                       .dump()
                << "\n";
      return kExitPass;
    }

    if (*region) {
      const auto grid = bandlim::region_grid(continuous_kind(family), a_max, b_max, step);
      {
        auto out = open_out(region_csv);
        bandlim::write_region_csv(out, grid);
      }
      if (!region_svg.empty()) {
        auto out = open_out(region_svg);
        bandlim::write_region_svg(out, grid);
      }
      long long green = 0, red = 0, white = 0;
      for (const auto& p : grid.points) {
        if (p.verdict == bandlim::Verdict::mimicable) ++green;
        else if (p.verdict == bandlim::Verdict::not_mimicable) ++red;
        else ++white;
      }
      std::cout << json{{"family", family},
                        {"points", grid.points.size()},
                        {"mimicable", green},
                        {"not_mimicable", red},
                        {"unknown", white},
                        {"csv", region_csv}}
                       .dump()
                << "\n";
      return kExitPass;
    }

    if (*verify) {
      const auto side_a = continuous_structure(family, lambda);
      const auto side_b = lattice_structure(family, spacing, lambda);
      const auto battery = bandlim::default_battery(spacing, bandwidth, levels);
      std::optional<bandlim::McPlan> plan;
      if (verify_mc) plan = bandlim::McPlan{replicas, seed, window, delta, threads};
      const auto cls = bandlim::classify_region(continuous_kind(family), spacing, bandwidth);
      const auto verdict =
          bandlim::mimicry_test(side_a, side_b, bandwidth, levels, battery, plan);
      std::cout << "classification " << bandlim::verdict_name(cls.verdict) << " (" << cls.rule
                << ")\n";
      for (const auto& e : verdict.entries)
        std::cout << "entry level=" << e.level << " label=\"" << e.label
                  << "\" value_a=" << bandlim::format_double(e.value_a)
                  << " value_b=" << bandlim::format_double(e.value_b)
                  << " discrepancy=" << bandlim::format_double(e.discrepancy)
                  << " threshold=" << bandlim::format_double(e.threshold)
                  << (e.monte_carlo ? " mc=1" : " mc=0") << " pass=" << (e.pass ? 1 : 0) << "\n";
      std::cout << "verdict " << verdict.verdict() << " bandwidth="
                << bandlim::format_double(bandwidth) << " levels=" << levels << "\n";
      if (!verify_json.empty()) {
        json j{{"classification", bandlim::verdict_name(cls.verdict)},
               {"rule", cls.rule},
               {"bandwidth", bandwidth},
               {"levels", levels},
               {"pass", verdict.pass},
               {"verdict", verdict.verdict()}};
        j["entries"] = json::array();
        for (const auto& e : verdict.entries) j["entries"].push_back(entry_json(e));
        auto out = open_out(verify_json);
        out << j.dump(2) << "\n";
      }
      return verdict.pass ? kExitPass : kExitFinding;
    }

    if (*rec) {
      const auto cont = continuous_structure(family, lambda);
      std::optional<double> eps;
      if (rec->count("--eps") > 0) eps = rec_eps;
      const double atom = bandlim::nyquist_reconstruct(cont, spacing, rec_k, bandwidth, eps);
      json j{{"family", family}, {"spacing", spacing}, {"bandwidth", bandwidth},
             {"k", rec_k},       {"atom", atom}};
      if (family == "poisson" || spacing <= 1.0) {
        const auto ref_struct = lattice_structure(family, spacing, lambda);
        const double ref = bandlim::lattice_atom(ref_struct, rec_k);
        j["reference"] = ref;
        j["gap"] = std::abs(atom - ref);
      }
      std::cout << j.dump() << "\n";
      return kExitPass;
    }

    if (*obs) {
      const auto rep = bandlim::obstruction_report(spacing);
      json j{{"spacing", rep.a}, {"witness", rep.witness}, {"detail", rep.detail}};
      switch (rep.kind) {
        case bandlim::ObstructionKind::none:
          j["kind"] = "none";
          break;
        case bandlim::ObstructionKind::factorial_moment:
          j["kind"] = "factorial-moment";
          break;
        case bandlim::ObstructionKind::hankel:
          j["kind"] = "hankel";
          break;
      }
      if (rep.a > 0.5) {
        const auto mv = bandlim::raw_moments(rep.a, rep.a > 1.0 ? 4 : 3, false);
        json m = json::array();
        for (int k = 0; k <= mv.max_order; ++k) m.push_back(mv.value[static_cast<std::size_t>(k)]);
        j["moments"] = m;
      }
      std::cout << j.dump() << "\n";
      return rep.kind == bandlim::ObstructionKind::none ? kExitPass : kExitFinding;
    }

    if (*sample) {
      const auto sampler = build_sampler(family, on_lattice, spacing, lambda, window, delta);
      std::vector<std::vector<std::string>> rows;
      for (long long r = 0; r < sample_replicas; ++r) {
        bandlim::RngState rng(seed, static_cast<std::uint64_t>(r));
        const auto cfg_r = sampler(rng);
        for (std::size_t i = 0; i < cfg_r.positions.size(); ++i)
          rows.push_back({std::to_string(r), bandlim::format_double(cfg_r.positions[i]),
                          std::to_string(cfg_r.multiplicities[i])});
      }
      if (sample_out.empty()) {
        bandlim::write_csv(std::cout, {"replica", "position", "multiplicity"}, rows);
      } else {
        auto out = open_out(sample_out);
        bandlim::write_csv(out, {"replica", "position", "multiplicity"}, rows);
      }
      return kExitPass;
    }

    if (*pc) {
      const auto sampler = build_sampler(family, on_lattice, spacing, lambda, window, delta);
      const double sampler_spacing = on_lattice ? spacing : 0.0;
      const auto hist = bandlim::empirical_pair_correlation(sampler, sampler_spacing, window, pc_opt);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t b = 0; b < hist.separation.size(); ++b)
        rows.push_back({bandlim::format_double(hist.separation[b]),
                        bandlim::format_double(hist.rate[b]), bandlim::format_double(hist.se[b]),
                        std::to_string(hist.count[b])});
      if (pc_out.empty()) {
        bandlim::write_csv(std::cout, {"separation", "rate", "se", "count"}, rows);
      } else {
        auto out = open_out(pc_out);
        bandlim::write_csv(out, {"separation", "rate", "se", "count"}, rows);
      }
      return kExitPass;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const bandlim::Error& e) {
    std::cerr << "error [" << bandlim::errc_name(e.code()) << "] " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
