#include "chromacert/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "chromacert/criterion.hpp"
#include "chromacert/errors.hpp"
#include "chromacert/fp_core.hpp"
#include "chromacert/fp_ramsey.hpp"
#include "chromacert/report.hpp"

namespace chromacert::cli {
namespace {

struct Exit {
  int code;
};

nlohmann::json header(std::string_view command) {
  return {{"tool", std::string(kToolName)},
          {"version", std::string(kToolVersion)},
          {"command", std::string(command)}};
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open " + out_path + " for writing");
  file << text;
  file.close();
  if (!file) throw std::ios_base::failure("failed writing " + out_path);
}

AffineMap random_valid_map(const PrimeField& field, std::mt19937_64& gen) {
  const auto p = static_cast<std::uint64_t>(field.p());
  for (;;) {
    const auto c = static_cast<std::int64_t>(gen() % p);
    const auto d = static_cast<std::int64_t>(gen() % p);
    const AffineMap g = AffineMap::rotation_dilation(field, c, d);
    if (is_valid_config_map(g)) return g;
  }
}

nlohmann::json check(std::string name, bool passed, double measured, double limit) {
  return {{"name", std::move(name)}, {"passed", passed}, {"measured", measured}, {"limit", limit}};
}

struct FpOptions {
  std::int64_t p = 0;
  std::int64_t a = 1;
  std::string coloring = "random";
  std::uint64_t seed = 0;
  std::string file;
  std::int64_t c = 0;
  std::int64_t d = 1;
  std::string color = "A";
};

ColoringSpec coloring_spec(const FpOptions& o) {
  if (o.coloring == "random") return RandomColoring{o.seed};
  if (o.coloring == "norm_residue") return NormResidueColoring{};
  if (o.coloring == "halfplane") return HalfplaneColoring{};
  return FileColoring{o.file};
}

nlohmann::json fp_params(const FpOptions& o) {
  nlohmann::json params = {{"p", o.p}, {"a", o.a}, {"coloring", o.coloring},
                           {"map", {{"c", o.c}, {"d", o.d}}}};
  if (o.coloring == "file") params["file"] = o.file;
  return params;
}

void add_fp_options(CLI::App* sub, FpOptions& o) {
  sub->add_option("--p", o.p, "odd prime")->required();
  sub->add_option("--a", o.a, "sphere radius (nonzero mod p)");
  sub->add_option("--coloring", o.coloring, "random | norm_residue | halfplane | file")
      ->check(CLI::IsMember({"random", "norm_residue", "halfplane", "file"}));
  sub->add_option("--seed", o.seed, "seed for the random coloring");
  sub->add_option("--file", o.file, "coloring file for --coloring file");
  sub->add_option("--c", o.c, "rotation-dilation parameter c");
  sub->add_option("--d", o.d, "rotation-dilation parameter d");
}

}  // namespace

nlohmann::json fp_verify_report(std::int64_t p, std::int64_t a, std::int64_t seeds,
                                unsigned threads) {
  const PrimeField field(p);
  if (field.reduce(a) == 0) throw DomainError("a must be nonzero mod p");
  if (seeds < 0) throw DomainError("seeds must be >= 0");
  const double root_p = std::sqrt(static_cast<double>(p));
  nlohmann::json checks = nlohmann::json::array();

  {
    double worst = 0.0;
    std::int64_t total = static_cast<std::int64_t>(null_cone_points(field).size());
    for (std::int64_t j = 1; j < p; ++j) {
      const auto n = static_cast<std::int64_t>(sphere_points(field, j).size());
      total += n;
      worst = std::max(worst, std::abs(static_cast<double>(n - p)));
    }
    checks.push_back(check("sphere_cardinality", worst <= 2.0 * root_p, worst, 2.0 * root_p));
    checks.push_back(check("sphere_partition", total == p * p, static_cast<double>(total),
                           static_cast<double>(p * p)));
  }

  const double fourier_limit = 2.0 * root_p + 1e-6;
  {
    double worst = 0.0;
    for (std::int64_t j = 1; j < p; ++j) worst = std::max(worst, sphere_fourier_max(field, j));
    checks.push_back(check("sphere_fourier_plain", worst <= fourier_limit, worst, fourier_limit));
  }

  std::vector<AffineMap> maps;
  for (std::int64_t seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 gen(static_cast<std::uint64_t>(seed));
    maps.push_back(random_valid_map(field, gen));
  }
  {
    double worst = 0.0;
    for (const auto& g : maps) worst = std::max(worst, sphere_fourier_max(field, a, g));
    checks.push_back(check("sphere_fourier_images", worst <= fourier_limit, worst, fourier_limit));
  }

  {
    const Complex g1 = gauss_sum(1, field);
    double worst_mag = 0.0;
    double worst_rel = 0.0;
    for (std::int64_t alpha = 1; alpha < p; ++alpha) {
      const Complex ga = gauss_sum(alpha, field);
      worst_mag = std::max(worst_mag, std::abs(std::abs(ga) - root_p));
      worst_rel = std::max(worst_rel,
                           std::abs(ga - static_cast<double>(legendre_symbol(alpha, field)) * g1));
    }
    checks.push_back(check("gauss_magnitude", worst_mag <= 1e-9, worst_mag, 1e-9));
    checks.push_back(check("gauss_legendre_relation", worst_rel <= 1e-9, worst_rel, 1e-9));
  }

  {
    double worst = 0.0;
    for (std::int64_t j = 1; j < p; ++j) {
      for (std::int64_t c = 1; c < p; ++c) {
        worst = std::max(worst, std::abs(kloosterman_sum(j, c, field)));
      }
    }
    checks.push_back(check("kloosterman_weil", worst <= 2.0 * root_p + 1e-9, worst,
                           2.0 * root_p + 1e-9));
  }

  {
    const auto sphere_size = static_cast<double>(sphere_points(field, a).size());
    double worst_decomp = 0.0;
    double worst_anti = 0.0;
    double worst_corr = 0.0;
    bool corr_ok = true;
    double worst_bilinear = 0.0;
    for (std::int64_t seed = 0; seed < seeds; ++seed) {
      const Coloring col = make_coloring(field, RandomColoring{static_cast<std::uint64_t>(seed)});
      const AffineMap& g = maps[static_cast<std::size_t>(seed)];
      double s2_sum = 0.0;
      for (Color color : {Color::A, Color::B}) {
        const auto direct = static_cast<double>(sigma_direct(col, g, a, color, threads));
        const SigmaBreakdown s = sigma_decomposed(col, g, a, color);
        worst_decomp = std::max(worst_decomp, std::abs(s.total - direct) / std::max(1.0, direct));
        const double bound = 2.0 * root_p * static_cast<double>(col.count(color)) + 1e-6;
        for (double term : {s.sigma1, s.sigma1_prime, s.sigma1_dprime}) {
          worst_corr = std::max(worst_corr, std::abs(term) / bound);
          corr_ok = corr_ok && std::abs(term) <= bound;
        }
        if (p <= kMaxBilinearPrime) {
          worst_bilinear = std::max(
              worst_bilinear, std::abs(sigma2_bilinear(col, g, a, color) - s.sigma2) /
                                  std::max(1.0, std::abs(s.sigma2)));
        }
        s2_sum += s.sigma2;
      }
      worst_anti = std::max(worst_anti, std::abs(s2_sum) / (static_cast<double>(p * p) * sphere_size));
    }
    checks.push_back(check("decomposition_equality", worst_decomp <= 1e-6, worst_decomp, 1e-6));
    checks.push_back(check("sigma2_antisymmetry", worst_anti <= 1e-6, worst_anti, 1e-6));
    checks.push_back(check("correction_bounds", corr_ok, worst_corr, 1.0));
    if (p <= kMaxBilinearPrime) {
      checks.push_back(check("sigma2_bilinear", worst_bilinear <= 1e-6, worst_bilinear, 1e-6));
    }
  }

  bool all = true;
  for (const auto& c : checks) all = all && c["passed"].get<bool>();
  nlohmann::json report = header("fp-verify");
  report["generator"] = std::string(kGeneratorName);
  report["seed"] = nullptr;
  report["params"] = {{"p", p}, {"a", a}, {"seeds", seeds}};
  report["checks"] = checks;
  report["all_passed"] = all;
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certifier for monochromatic configurations in two-colorings of the plane",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  unsigned threads = 1;
  app.add_option("--out", out_path, "write output to this path instead of stdout");
  app.add_option("--threads", threads, "worker threads (output does not depend on it)")
      ->check(CLI::Range(1u, 64u));

  std::function<int()> action;

  // criterion
  auto* criterion = app.add_subcommand("criterion", "Bessel-sum criteria for the real plane");
  criterion->require_subcommand(1);
  double kappa = 0.0;
  double radius = 1.0;
  double omega = 0.0;
  double phi = 0.0;
  double phi_degrees = 0.0;
  double grid_step = MinimizeOptions{}.grid_step;

  auto finish_verdict = [&](const CriterionVerdict& v, nlohmann::json params) {
    nlohmann::json report = header("criterion");
    report["generator"] = nullptr;
    report["seed"] = nullptr;
    report["params"] = std::move(params);
    report["verdict"] = to_json(v);
    emit(report.dump(2) + "\n", out_path, out);
    switch (v.status) {
      case VerdictStatus::pass:
        return kExitOk;
      case VerdictStatus::fail:
        return kExitFail;
      case VerdictStatus::inconclusive:
        return kExitInconclusive;
    }
    return kExitInternal;
  };
  auto options = [&] {
    MinimizeOptions o;
    o.grid_step = grid_step;
    o.threads = threads;
    return o;
  };

  auto* collinear = criterion->add_subcommand("collinear", "J0(t) + J0(kt) + J0((1+k)t) > -1");
  collinear->add_option("--kappa", kappa)->required();
  collinear->add_option("--radius", radius, "segment length a (does not affect the verdict)");
  collinear->add_option("--grid-step", grid_step);
  collinear->callback([&] {
    action = [&] {
      return finish_verdict(check_collinear(kappa, radius, options()),
                            {{"kind", "collinear"}, {"kappa", kappa}, {"radius", radius},
                             {"grid_step", grid_step}});
    };
  });

  auto* triangle = criterion->add_subcommand("triangle", "J0(t) + J0(wt) + min J0 > -1");
  triangle->add_option("--omega", omega)->required();
  triangle->add_option("--grid-step", grid_step);
  triangle->callback([&] {
    action = [&] {
      return finish_verdict(check_triangle_crude(omega, options()),
                            {{"kind", "triangle"}, {"omega", omega}, {"grid_step", grid_step}});
    };
  });

  auto* rotation = criterion->add_subcommand("rotation", "J0(t) + J0(wt) + J0(w't) > -1");
  rotation->add_option("--omega", omega)->required();
  auto* phi_opt = rotation->add_option("--phi", phi, "rotation angle in radians");
  auto* phi_deg_opt = rotation->add_option("--phi-degrees", phi_degrees, "rotation angle in degrees");
  phi_opt->excludes(phi_deg_opt);
  rotation->add_option("--grid-step", grid_step);
  rotation->callback([&] {
    if (phi_opt->count() == 0 && phi_deg_opt->count() == 0) {
      throw CLI::RequiredError("--phi or --phi-degrees");
    }
    if (phi_deg_opt->count() > 0) phi = phi_degrees * std::numbers::pi / 180.0;
    action = [&] {
      const CriterionVerdict v = check_triangle_rotation(omega, phi, options());
      const ComposedMap gi = composed_map_minus_identity(omega, phi);
      return finish_verdict(v, {{"kind", "rotation"},
                                {"omega", omega},
                                {"phi", phi},
                                {"omega_prime", gi.omega_prime},
                                {"phi_prime", gi.phi_prime},
                                {"grid_step", grid_step}});
    };
  });

  // profile
  auto* profile = app.add_subcommand("profile", "CSV samples of sum_i J0(a_i t)");
  std::vector<double> scales;
  double t_max = 50.0;
  double step = 0.01;
  profile->add_option("--scales", scales, "comma-separated scales a_i")->required()->delimiter(',');
  profile->add_option("--t-max", t_max);
  profile->add_option("--step", step);
  profile->callback([&] {
    action = [&] {
      const auto rows = bessel_sum_profile(BesselSumSpec{scales, 0.0}, t_max, step);
      std::string text = "t,value\n";
      char buf[64];
      for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.t, r.value);
        text += buf;
      }
      emit(text, out_path, out);
      return kExitOk;
    };
  });

  // fp-verify
  auto* verify = app.add_subcommand("fp-verify", "finite-field invariant suite");
  std::int64_t vp = 0;
  std::int64_t va = 1;
  std::int64_t vseeds = 5;
  verify->add_option("--p", vp, "odd prime")->required();
  verify->add_option("--a", va, "sphere radius");
  verify->add_option("--seeds", vseeds, "number of random colorings and maps");
  verify->callback([&] {
    action = [&] {
      const nlohmann::json report = fp_verify_report(vp, va, vseeds, threads);
      emit(report.dump(2) + "\n", out_path, out);
      return report["all_passed"].get<bool>() ? kExitOk : kExitFail;
    };
  });

  // fp-search
  auto* search = app.add_subcommand("fp-search", "search for a monochromatic triple");
  FpOptions so;
  add_fp_options(search, so);
  search->callback([&] {
    action = [&] {
      const PrimeField field(so.p);
      const Coloring col = make_coloring(field, coloring_spec(so));
      const AffineMap g = AffineMap::rotation_dilation(field, so.c, so.d);
      const auto triple = find_monochromatic_triple(col, g, so.a, threads);
      nlohmann::json report = header("fp-search");
      report["generator"] = std::string(kGeneratorName);
      report["seed"] = so.coloring == "random" ? nlohmann::json(so.seed) : nlohmann::json(nullptr);
      report["params"] = fp_params(so);
      report["sigma_A"] = sigma_direct(col, g, so.a, Color::A, threads);
      report["sigma_B"] = sigma_direct(col, g, so.a, Color::B, threads);
      if (triple) {
        report["triple"] = {{"x", to_json(triple->x)},
                            {"s", to_json(triple->s)},
                            {"y", to_json(triple->y(field))},
                            {"z", to_json(triple->z(field, g))},
                            {"color", std::string(to_string(triple->color))}};
      } else {
        report["triple"] = nullptr;
      }
      emit(report.dump(2) + "\n", out_path, out);
      return triple ? kExitOk : kExitFail;
    };
  });

  // fp-sigma
  auto* sigma = app.add_subcommand("fp-sigma", "sigma(A) and its Fourier decomposition");
  FpOptions mo;
  add_fp_options(sigma, mo);
  sigma->add_option("--color", mo.color, "A or B")->check(CLI::IsMember({"A", "B"}));
  sigma->callback([&] {
    action = [&] {
      const PrimeField field(mo.p);
      const Coloring col = make_coloring(field, coloring_spec(mo));
      const AffineMap g = AffineMap::rotation_dilation(field, mo.c, mo.d);
      const Color color = mo.color == "A" ? Color::A : Color::B;
      const std::int64_t direct = sigma_direct(col, g, mo.a, color, threads);
      nlohmann::json report = header("fp-sigma");
      report["generator"] = std::string(kGeneratorName);
      report["seed"] = mo.coloring == "random" ? nlohmann::json(mo.seed) : nlohmann::json(nullptr);
      report["params"] = fp_params(mo);
      report["sigma"] =
          sigma_report(sigma_decomposed(col, g, mo.a, color), field.p(), field.reduce(mo.a), g,
                       color, direct);
      emit(report.dump(2) + "\n", out_path, out);
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!action) {
    err << "error: no subcommand selected\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const SingularMapError& e) {
    err << "map error: " << e.what() << "\n";
    return kExitMapError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsatisfiableCutoffError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace chromacert::cli
