#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chromacert/cli.hpp"
#include "chromacert/fp_ramsey.hpp"
#include "doctest.h"

namespace cli = chromacert::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("criterion subcommands") {
  SUBCASE("collinear kappa = 1 passes") {
    const auto r = run({"criterion", "collinear", "--kappa", "1"});
    CHECK(r.code == cli::kExitOk);
    const auto j = json_of(r);
    CHECK(j["tool"] == "chromacert");
    CHECK(j["verdict"]["status"] == "pass");
    const auto& cert = j["verdict"]["certificate"];
    for (const char* key : {"scales", "constant_offset", "min_value", "argmin", "scan_cutoff_T",
                            "tail_bound_at_T", "grid_step", "margin", "passes"}) {
      CHECK(cert.contains(key));
    }
    CHECK(cert["passes"] == true);
    CHECK(cert["min_value"].get<double>() >= -0.74);
  }
  SUBCASE("equilateral rotation fails") {
    const auto r = run({"criterion", "rotation", "--omega", "1", "--phi", "1.0471975512"});
    CHECK(r.code == cli::kExitFail);
    CHECK(json_of(r)["verdict"]["passes"] == false);
  }
  SUBCASE("degrees convenience flag") {
    const auto a = run({"criterion", "rotation", "--omega", "2", "--phi-degrees", "90"});
    CHECK(a.code == cli::kExitOk);
    CHECK(json_of(a)["params"]["phi"].get<double>() == doctest::Approx(M_PI / 2));
    CHECK(run({"criterion", "rotation", "--omega", "2", "--phi", "1", "--phi-degrees", "90"}).code ==
          cli::kExitUsage);
    CHECK(run({"criterion", "rotation", "--omega", "2"}).code == cli::kExitUsage);
  }
  SUBCASE("triangle omega = 2 passes") {
    const auto r = run({"criterion", "triangle", "--omega", "2"});
    CHECK(r.code == cli::kExitOk);
  }
  SUBCASE("singular rotation is a map error") {
    CHECK(run({"criterion", "rotation", "--omega", "1", "--phi", "0"}).code == cli::kExitMapError);
  }
  SUBCASE("bad parameters") {
    CHECK(run({"criterion", "collinear", "--kappa", "-1"}).code == cli::kExitUsage);
    CHECK(run({"criterion", "collinear", "--kappa", "abc"}).code == cli::kExitUsage);
    CHECK(run({"criterion", "collinear"}).code == cli::kExitUsage);
    CHECK(run({"criterion", "collinear", "--kappa", "1", "--bogus"}).code == cli::kExitUsage);
    CHECK(run({"criterion"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  }
  SUBCASE("output does not depend on threads") {
    const auto a = run({"criterion", "collinear", "--kappa", "2"});
    const auto b = run({"criterion", "collinear", "--kappa", "2", "--threads", "3"});
    CHECK(a.out == b.out);
  }
  SUBCASE("help exits cleanly") {
    const auto r = run({"--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("criterion") != std::string::npos);
  }
}

TEST_CASE("profile CSV") {
  const auto r = run({"profile", "--scales", "1", "--t-max", "1", "--step", "0.5"});
  CHECK(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,value");
  std::getline(in, line);
  CHECK(line == "0,1");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(r.out.find('\r') == std::string::npos);

  const auto path = temp_file("chromacert_profile.csv");
  const auto w = run({"profile", "--scales", "1,1,2", "--t-max", "50", "--step", "0.001", "--out",
                      path.string()});
  CHECK(w.code == cli::kExitOk);
  CHECK(w.out.empty());
  std::ifstream file(path);
  std::getline(file, line);
  double lowest = 1e9;
  while (std::getline(file, line)) {
    lowest = std::min(lowest, std::stod(line.substr(line.find(',') + 1)));
  }
  CHECK(lowest >= -0.74);
  std::filesystem::remove(path);

  const auto eq = run({"profile", "--scales", "1,1,1", "--t-max", "10", "--step", "0.001"});
  std::istringstream eqin(eq.out);
  std::getline(eqin, line);
  lowest = 1e9;
  while (std::getline(eqin, line)) lowest = std::min(lowest, std::stod(line.substr(line.find(',') + 1)));
  CHECK(lowest == doctest::Approx(-1.2083).epsilon(1e-4));

  CHECK(run({"profile", "--scales", "1", "--step", "0"}).code == cli::kExitUsage);
  CHECK(run({"profile", "--scales", "1", "--out", "/nonexistent-dir/x.csv"}).code == cli::kExitIo);
}

TEST_CASE("fp-verify") {
  const auto r = run({"fp-verify", "--p", "7", "--a", "1", "--seeds", "5"});
  CHECK(r.code == cli::kExitOk);
  const auto j = json_of(r);
  CHECK(j["all_passed"] == true);
  CHECK(j["generator"] == "mt19937_64");
  CHECK(j["params"]["p"] == 7);
  for (const auto& c : j["checks"]) CHECK_MESSAGE(c["passed"] == true, c.dump());

  const auto big = json_of(run({"fp-verify", "--p", "31", "--a", "3", "--seeds", "2"}));
  for (const auto& c : big["checks"]) {
    if (c["name"] == "sphere_fourier_plain") {
      CHECK(c["measured"].get<double>() <= 2.0 * std::sqrt(31.0));
    }
  }
  CHECK(run({"fp-verify", "--p", "4"}).code == cli::kExitUsage);
  CHECK(run({"fp-verify", "--p", "7", "--a", "14"}).code == cli::kExitUsage);
}

TEST_CASE("fp-search") {
  SUBCASE("norm residue at p = 103") {
    const auto r = run({"fp-search", "--p", "103", "--a", "1", "--coloring", "norm_residue", "--c",
                        "0", "--d", "1"});
    CHECK(r.code == cli::kExitOk);
    const auto j = json_of(r);
    CHECK_FALSE(j["triple"].is_null());
    CHECK(j["sigma_A"].get<std::int64_t>() + j["sigma_B"].get<std::int64_t>() > 0);
  }
  SUBCASE("all-A file") {
    const auto path = temp_file("chromacert_all_a.txt");
    {
      std::ofstream out(path);
      out << "p=7\n";
      for (int i = 0; i < 7; ++i) out << "1111111\n";
    }
    const auto r = run({"fp-search", "--p", "7", "--coloring", "file", "--file", path.string()});
    CHECK(r.code == cli::kExitOk);
    const auto j = json_of(r);
    CHECK(j["triple"]["x"] == nlohmann::json::array({0, 0}));
    CHECK(j["triple"]["color"] == "A");
    CHECK(j["seed"].is_null());
    std::filesystem::remove(path);
  }
  SUBCASE("malformed and missing files") {
    const auto path = temp_file("chromacert_bad.txt");
    {
      std::ofstream out(path);
      out << "p=3\n111\n1x1\n111\n";
    }
    const auto r = run({"fp-search", "--p", "3", "--coloring", "file", "--file", path.string()});
    CHECK(r.code == 66);
    CHECK(r.err.find("line 3") != std::string::npos);
    std::filesystem::remove(path);
    CHECK(run({"fp-search", "--p", "3", "--coloring", "file", "--file", path.string()}).code ==
          cli::kExitIo);
  }
  SUBCASE("identity map is rejected") {
    CHECK(run({"fp-search", "--p", "7", "--c", "1", "--d", "0"}).code == cli::kExitMapError);
  }
  SUBCASE("reproducible") {
    const std::vector<std::string> args{"fp-search", "--p", "31", "--seed", "5", "--a", "2"};
    const auto a = run(args);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "4"});
    CHECK(a.out == run(args).out);
    CHECK(a.out == run(threaded).out);
    CHECK(json_of(a)["seed"] == 5);
  }
}

TEST_CASE("fp-sigma") {
  const auto r = run({"fp-sigma", "--p", "13", "--a", "2", "--c", "2", "--d", "1", "--seed", "7"});
  CHECK(r.code == cli::kExitOk);
  const auto s = json_of(r)["sigma"];
  for (const char* key : {"p", "a", "map", "color", "main_term", "sigma1", "sigma1_prime",
                          "sigma1_dprime", "sigma2", "total", "direct_count", "residual"}) {
    CHECK(s.contains(key));
  }
  CHECK(s["map"]["c"] == 2);
  CHECK(s["map"]["d"] == 1);
  CHECK(s["color"] == "A");
  CHECK(std::abs(s["residual"].get<double>()) <= 1e-6 * s["direct_count"].get<double>());
  CHECK(json_of(run({"fp-sigma", "--p", "13", "--color", "B"}))["sigma"]["color"] == "B");
  CHECK(run({"fp-sigma", "--p", "13", "--color", "C"}).code == cli::kExitUsage);
}
