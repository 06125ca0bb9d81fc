// bandlim: reproduce the library's numerical experiments as CSV and SVG.
//
// Exit codes: 0 success, 2 configuration problem, 3 convergence not certified,
// 1 anything else.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandlim/experiments.hpp"

namespace {

struct cli_options {
  CLI::Option* config = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* signal = nullptr;
  CLI::Option* basis = nullptr;
  CLI::Option* orders = nullptr;
  CLI::Option* c_list = nullptr;
  CLI::Option* c = nullptr;
  CLI::Option* T = nullptr;
  CLI::Option* omega = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* grid_m = nullptr;
  CLI::Option* plot_points = nullptr;
  CLI::Option* pswf_order = nullptr;
  CLI::Option* seed = nullptr;
};

struct cli_values {
  std::string config_path, out, signal, basis, orders, c_list;
  double c = 0.0, T = 0.0, omega = 0.0, alpha = 0.0;
  int grid_m = 0, plot_points = 0, pswf_order = 0;
  long seed = 0;
};

cli_options add_options(CLI::App* app, cli_values& v) {
  cli_options o;
  o.config = app->add_option("--config", v.config_path, "config file (key=value lines)");
  o.out = app->add_option("--out", v.out, "output directory (default ./out)");
  o.signal = app->add_option("--signal", v.signal, "catalog signal name");
  o.basis = app->add_option("--basis", v.basis,
                            "hermite | scaled_hermite | legendre | chebyshev");
  o.orders = app->add_option("--orders", v.orders, "comma-separated order list");
  o.c_list = app->add_option("--c-list", v.c_list, "comma-separated bandwidths");
  o.c = app->add_option("--c", v.c, "band radius / bandwidth");
  o.T = app->add_option("--T", v.T, "time window half-width");
  o.omega = app->add_option("--omega", v.omega, "frequency window (0 = c)");
  o.alpha = app->add_option("--alpha", v.alpha, "basis dilation (0 = 1/sqrt(c))");
  o.grid_m = app->add_option("--grid", v.grid_m, "scan grid points per axis");
  o.plot_points = app->add_option("--plot-points", v.plot_points, "pointwise grid size");
  o.pswf_order = app->add_option("--order", v.pswf_order, "Galerkin truncation (0 = default)");
  o.seed = app->add_option("--seed", v.seed, "seed for randomized sweeps");
  return o;
}

bandlim::experiment_config assemble(const std::string& name, const cli_options& o,
                                    const cli_values& v) {
  bandlim::experiment_config cfg;
  if (o.config->count() > 0) {
    std::ifstream in(v.config_path);
    if (!in) throw bandlim::config_error("cannot open config file: " + v.config_path);
    cfg = bandlim::parse_config(in);
  } else {
    cfg = bandlim::default_config(name);
  }
  cfg.subcommand = name;  // the invoked subcommand wins over the file
  if (o.out->count()) cfg.out_dir = v.out;
  if (o.signal->count()) cfg.signal = v.signal;
  if (o.basis->count()) cfg.basis = v.basis;
  if (o.orders->count())
    cfg.orders = bandlim::detail::parse_list<int>(v.orders, [](const std::string& s) {
      return static_cast<int>(bandlim::detail::parse_long(s, "orders"));
    });
  if (o.c_list->count())
    cfg.c_list = bandlim::detail::parse_list<double>(v.c_list, [](const std::string& s) {
      return bandlim::detail::parse_double(s, "c_list");
    });
  if (o.c->count()) cfg.c = v.c;
  if (o.T->count()) cfg.T = v.T;
  if (o.omega->count()) cfg.omega = v.omega;
  if (o.alpha->count()) cfg.alpha = v.alpha;
  if (o.grid_m->count()) cfg.grid_m = v.grid_m;
  if (o.plot_points->count()) cfg.plot_points = v.plot_points;
  if (o.pswf_order->count()) cfg.pswf_order = v.pswf_order;
  if (o.seed->count()) cfg.seed = v.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band-limited approximation experiments"};
  app.require_subcommand(1);

  const std::vector<std::string> names = {"kernel-scan", "project", "coeff-decay", "pswf",
                                          "run-all"};
  const std::vector<std::string> descriptions = {
      "polynomial kernel vs sinc kernel residual scan",
      "pointwise projection of a catalog signal",
      "expansion coefficient decay against its bound",
      "concentration-operator spectrum, bounds, and coefficients",
      "every experiment with its default parameters"};

  std::vector<cli_values> values(names.size());
  std::vector<cli_options> options(names.size());
  std::vector<CLI::App*> subs(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    subs[i] = app.add_subcommand(names[i], descriptions[i]);
    options[i] = add_options(subs[i], values[i]);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (size_t i = 0; i < names.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      bandlim::experiment_config cfg = assemble(names[i], options[i], values[i]);
      bandlim::run_result res = bandlim::run_experiment(cfg);
      for (const std::string& f : res.files)
        std::cout << "wrote " << cfg.out_dir << "/" << f << "\n";
    }
  } catch (const bandlim::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bandlim::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bandlim::regime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
