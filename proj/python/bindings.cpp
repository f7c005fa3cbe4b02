#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chromacert/cli.hpp"
#include "chromacert/criterion.hpp"
#include "chromacert/errors.hpp"
#include "chromacert/fp_core.hpp"
#include "chromacert/fp_ramsey.hpp"
#include "chromacert/report.hpp"
#include "chromacert/special_fn.hpp"

namespace py = pybind11;
using namespace chromacert;

namespace {

// Reports cross the boundary as plain dicts via the json module.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

MinimizeOptions options(double grid_step, unsigned threads) {
  MinimizeOptions o;
  o.grid_step = grid_step;
  o.threads = threads;
  return o;
}

Color parse_color(const std::string& name) {
  if (name == "A") return Color::A;
  if (name == "B") return Color::B;
  throw DomainError("color must be 'A' or 'B'");
}

AffineMap make_map(const PrimeField& field, std::int64_t c, std::int64_t d) {
  return AffineMap::rotation_dilation(field, c, d);
}

py::tuple point(const FpPoint& x) { return py::make_tuple(x.x1, x.x2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bessel-sum criteria and the F_p x F_p coloring laboratory";
  m.attr("__version__") = std::string(kToolVersion);

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularMapError>(m, "SingularMapError", domain_error.ptr());
  py::register_exception<UnsatisfiableCutoffError>(m, "UnsatisfiableCutoffError",
                                                   PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "bessel_j0",
      [](double t) {
        const auto v = bessel_j0(t);
        return py::make_tuple(v.value, v.abs_error);
      },
      py::arg("t"), "J0(t) for t >= 0 as (value, abs_error).");
  m.def("bessel_magnitude_bound", &bessel_magnitude_bound, py::arg("t"));

  m.def(
      "minimize_bessel_sum",
      [](std::vector<double> scales, double constant_offset, double grid_step, unsigned threads) {
        return to_python(to_json(
            minimize_bessel_sum({std::move(scales), constant_offset}, options(grid_step, threads))));
      },
      py::arg("scales"), py::arg("constant_offset") = 0.0, py::arg("grid_step") = 1e-3,
      py::arg("threads") = 1u);
  m.def("j0_minimum", &j0_minimum);
  m.def(
      "check_collinear",
      [](double kappa, double radius, double grid_step, unsigned threads) {
        return to_python(to_json(check_collinear(kappa, radius, options(grid_step, threads))));
      },
      py::arg("kappa"), py::arg("radius") = 1.0, py::arg("grid_step") = 1e-3,
      py::arg("threads") = 1u);
  m.def(
      "check_triangle_crude",
      [](double omega, double grid_step, unsigned threads) {
        return to_python(to_json(check_triangle_crude(omega, options(grid_step, threads))));
      },
      py::arg("omega"), py::arg("grid_step") = 1e-3, py::arg("threads") = 1u);
  m.def(
      "check_triangle_rotation",
      [](double omega, double phi, double grid_step, unsigned threads) {
        return to_python(
            to_json(check_triangle_rotation(omega, phi, options(grid_step, threads))));
      },
      py::arg("omega"), py::arg("phi"), py::arg("grid_step") = 1e-3, py::arg("threads") = 1u);
  m.def(
      "composed_map_minus_identity",
      [](double omega, double phi) {
        const auto c = composed_map_minus_identity(omega, phi);
        py::dict d;
        d["omega_prime"] = c.omega_prime;
        d["phi_prime"] = c.phi_prime;
        d["degenerate"] = c.degenerate;
        return d;
      },
      py::arg("omega"), py::arg("phi"));
  m.def(
      "bessel_sum_profile",
      [](std::vector<double> scales, double t_max, double step, double constant_offset) {
        std::vector<std::pair<double, double>> out;
        for (const auto& pt : bessel_sum_profile({std::move(scales), constant_offset}, t_max, step))
          out.emplace_back(pt.t, pt.value);
        return out;
      },
      py::arg("scales"), py::arg("t_max"), py::arg("step"), py::arg("constant_offset") = 0.0);

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def(
      "sphere_points",
      [](std::int64_t p, std::int64_t j) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& x : sphere_points(PrimeField(p), j)) out.emplace_back(x.x1, x.x2);
        return out;
      },
      py::arg("p"), py::arg("j"));
  m.def(
      "legendre_symbol",
      [](std::int64_t a, std::int64_t p) { return legendre_symbol(a, PrimeField(p)); },
      py::arg("a"), py::arg("p"));
  m.def(
      "gauss_sum", [](std::int64_t alpha, std::int64_t p) { return gauss_sum(alpha, PrimeField(p)); },
      py::arg("alpha"), py::arg("p"));
  m.def(
      "kloosterman_sum",
      [](std::int64_t j, std::int64_t c, std::int64_t p) {
        return kloosterman_sum(j, c, PrimeField(p));
      },
      py::arg("j"), py::arg("c"), py::arg("p"));
  m.def(
      "sphere_fourier_max",
      [](std::int64_t p, std::int64_t j, std::optional<std::int64_t> c,
         std::optional<std::int64_t> d) {
        const PrimeField field(p);
        std::optional<AffineMap> g;
        if (c || d) g = make_map(field, c.value_or(1), d.value_or(0));
        return sphere_fourier_max(field, j, g);
      },
      py::arg("p"), py::arg("j"), py::arg("c") = py::none(), py::arg("d") = py::none(),
      "max over r != 0 of |hat S_j(r)|, optionally for the image of S_j under [[c,-d],[d,c]].");

  py::class_<Coloring>(m, "Coloring")
      .def_static(
          "random",
          [](std::int64_t p, std::uint64_t seed) {
            return make_coloring(PrimeField(p), RandomColoring{seed});
          },
          py::arg("p"), py::arg("seed"))
      .def_static(
          "norm_residue",
          [](std::int64_t p) { return make_coloring(PrimeField(p), NormResidueColoring{}); },
          py::arg("p"))
      .def_static(
          "halfplane",
          [](std::int64_t p) { return make_coloring(PrimeField(p), HalfplaneColoring{}); },
          py::arg("p"))
      .def_static(
          "parse",
          [](const std::string& text) {
            std::istringstream in(text);
            return read_coloring(in);
          },
          py::arg("text"), "Reads the `p=<prime>` text format.")
      .def_property_readonly("p", &Coloring::p)
      .def("is_a", &Coloring::is_a, py::arg("x1"), py::arg("x2"))
      .def(
          "count", [](const Coloring& c, const std::string& color) { return c.count(parse_color(color)); },
          py::arg("color"))
      .def(
          "density",
          [](const Coloring& c, const std::string& color) { return c.density(parse_color(color)); },
          py::arg("color"))
      .def("to_text", [](const Coloring& c) {
        std::ostringstream out;
        write_coloring(out, c);
        return out.str();
      });

  m.def(
      "sigma_direct",
      [](const Coloring& col, std::int64_t c, std::int64_t d, std::int64_t a,
         const std::string& color, unsigned threads) {
        return sigma_direct(col, make_map(PrimeField(col.p()), c, d), a, parse_color(color),
                            threads);
      },
      py::arg("coloring"), py::arg("c"), py::arg("d"), py::arg("a"), py::arg("color") = "A",
      py::arg("threads") = 1u);
  m.def(
      "sigma_decomposed",
      [](const Coloring& col, std::int64_t c, std::int64_t d, std::int64_t a,
         const std::string& color) {
        const auto g = make_map(PrimeField(col.p()), c, d);
        const auto k = parse_color(color);
        return to_python(sigma_report(sigma_decomposed(col, g, a, k), col.p(), a, g, k,
                                      sigma_direct(col, g, a, k)));
      },
      py::arg("coloring"), py::arg("c"), py::arg("d"), py::arg("a"), py::arg("color") = "A");
  m.def(
      "find_monochromatic_triple",
      [](const Coloring& col, std::int64_t c, std::int64_t d, std::int64_t a,
         unsigned threads) -> py::object {
        const PrimeField field(col.p());
        const auto g = make_map(field, c, d);
        const auto hit = find_monochromatic_triple(col, g, a, threads);
        if (!hit) return py::none();
        py::dict out;
        out["x"] = point(hit->x);
        out["y"] = point(hit->y(field));
        out["z"] = point(hit->z(field, g));
        out["s"] = point(hit->s);
        out["color"] = std::string(to_string(hit->color));
        return out;
      },
      py::arg("coloring"), py::arg("c"), py::arg("d"), py::arg("a"), py::arg("threads") = 1u);
  m.def(
      "theorem_lower_bound", [](std::int64_t p) { return theorem_lower_bound(PrimeField(p)); },
      py::arg("p"));
  m.def(
      "fp_verify_report",
      [](std::int64_t p, std::int64_t a, std::int64_t seeds, unsigned threads) {
        return to_python(cli::fp_verify_report(p, a, seeds, threads));
      },
      py::arg("p"), py::arg("a") = 1, py::arg("seeds") = 10, py::arg("threads") = 1u);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI invocation; returns (exit_code, stdout, stderr).");
}
