#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bandlim/common.hpp"
#include "bandlim/concentration.hpp"
#include "bandlim/csv.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/projections.hpp"
#include "bandlim/pswf.hpp"
#include "bandlim/svg.hpp"

namespace bandlim {

// One experiment run, fully described: serializing and re-parsing this struct
// reproduces the run bit for bit.
struct experiment_config {
  std::string subcommand = "run-all";
  std::string signal = "indicator";
  std::string basis = "scaled_hermite";
  std::vector<int> orders = {40, 80};
  std::vector<double> c_list = {10.0, 50.0};
  double c = 100.0;   // band radius (projections) / bandwidth (pswf)
  double T = 1.0;
  double omega = 0.0;  // 0 = default to c
  double alpha = 0.0;  // 0 = the 1/sqrt(c) dilation convention
  int grid_m = 80;
  int plot_points = 2001;
  int pswf_order = 0;  // 0 = truncation default for the given c
  long seed = 12345;   // reserved for randomized property sweeps
  std::string out_dir = "out";

  bool operator==(const experiment_config&) const = default;
};

inline experiment_config default_config(const std::string& subcommand) {
  experiment_config cfg;
  cfg.subcommand = subcommand;
  if (subcommand == "kernel-scan") {
    cfg.orders = {10, 25, 50, 75, 100};
    cfg.T = 1.0;
    cfg.grid_m = 80;
  } else if (subcommand == "project") {
    cfg.signal = "indicator";
    cfg.basis = "scaled_hermite";
    cfg.orders = {40, 80};
    cfg.c = 100.0;
  } else if (subcommand == "coeff-decay") {
    cfg.c_list = {10.0, 50.0};
  } else if (subcommand == "pswf") {
    cfg.c = 5.0;
  } else if (subcommand != "run-all") {
    throw config_error("unknown subcommand: " + subcommand);
  }
  return cfg;
}

namespace detail {

inline std::string format_gshort(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return std::string(buf);
}

template <typename T>
std::string join_list(const std::vector<T>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, double>)
      s += format_gshort(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

inline double parse_double(const std::string& s, const std::string& key) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw config_error("config: bad number for " + key + ": '" + s + "'");
  }
  if (pos != s.size()) throw config_error("config: bad number for " + key + ": '" + s + "'");
  return v;
}

inline long parse_long(const std::string& s, const std::string& key) {
  size_t pos = 0;
  long v;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw config_error("config: bad integer for " + key + ": '" + s + "'");
  }
  if (pos != s.size()) throw config_error("config: bad integer for " + key + ": '" + s + "'");
  return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& s, Parse parse) {
  std::vector<T> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace detail

inline void write_config(const experiment_config& cfg, std::ostream& out) {
  out << "subcommand=" << cfg.subcommand << "\n";
  out << "signal=" << cfg.signal << "\n";
  out << "basis=" << cfg.basis << "\n";
  out << "orders=" << detail::join_list(cfg.orders) << "\n";
  out << "c_list=" << detail::join_list(cfg.c_list) << "\n";
  out << "c=" << detail::format_gshort(cfg.c) << "\n";
  out << "T=" << detail::format_gshort(cfg.T) << "\n";
  out << "omega=" << detail::format_gshort(cfg.omega) << "\n";
  out << "alpha=" << detail::format_gshort(cfg.alpha) << "\n";
  out << "grid_m=" << cfg.grid_m << "\n";
  out << "plot_points=" << cfg.plot_points << "\n";
  out << "pswf_order=" << cfg.pswf_order << "\n";
  out << "seed=" << cfg.seed << "\n";
  out << "out=" << cfg.out_dir << "\n";
}

// key=value lines; '#' starts a comment; unknown keys are errors, not typos to
// silently ignore. The parse starts from the named subcommand's defaults, so a
// config file only needs the keys it overrides.
inline experiment_config parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw config_error("config: expected key=value, got '" + t + "'");
    kv.emplace_back(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
  std::string sub = "run-all";
  for (const auto& [k, v] : kv)
    if (k == "subcommand") sub = v;
  experiment_config cfg = default_config(sub);
  for (const auto& [k, v] : kv) {
    if (k == "subcommand")
      cfg.subcommand = v;
    else if (k == "signal")
      cfg.signal = v;
    else if (k == "basis")
      cfg.basis = v;
    else if (k == "orders")
      cfg.orders = detail::parse_list<int>(
          v, [&](const std::string& s) { return static_cast<int>(detail::parse_long(s, k)); });
    else if (k == "c_list")
      cfg.c_list =
          detail::parse_list<double>(v, [&](const std::string& s) { return detail::parse_double(s, k); });
    else if (k == "c")
      cfg.c = detail::parse_double(v, k);
    else if (k == "T")
      cfg.T = detail::parse_double(v, k);
    else if (k == "omega")
      cfg.omega = detail::parse_double(v, k);
    else if (k == "alpha")
      cfg.alpha = detail::parse_double(v, k);
    else if (k == "grid_m")
      cfg.grid_m = static_cast<int>(detail::parse_long(v, k));
    else if (k == "plot_points")
      cfg.plot_points = static_cast<int>(detail::parse_long(v, k));
    else if (k == "pswf_order")
      cfg.pswf_order = static_cast<int>(detail::parse_long(v, k));
    else if (k == "seed")
      cfg.seed = detail::parse_long(v, k);
    else if (k == "out")
      cfg.out_dir = v;
    else
      throw config_error("config: unknown key '" + k + "'");
  }
  return cfg;
}

struct run_result {
  std::vector<std::string> files;  // paths relative to the output directory
};

namespace detail {

inline std::string out_path(const experiment_config& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

}  // namespace detail

// ---------------------------------------------------------------- kernel-scan

inline run_result run_kernel_scan(const experiment_config& cfg) {
  if (cfg.orders.empty()) throw config_error("kernel-scan: order list is empty");
  if (!(cfg.T > 0.0)) throw config_error("kernel-scan: T must be positive");
  if (cfg.grid_m < 2) throw config_error("kernel-scan: grid_m must be at least 2");
  for (int n : cfg.orders)
    if (n < 0) throw config_error("kernel-scan: negative order in list");

  run_result res;
  std::string csv_name = "kernel_scan.csv";
  csv_writer csv(detail::out_path(cfg, csv_name),
                 {"n", "E_tilde", "uniform_bound", "hs_norm", "hs_bound", "regime_ok"});
  csv.comment("residual of the degree-n polynomial kernel against the sinc kernel on [-T,T]^2");
  csv.comment("T=" + detail::format_gshort(cfg.T) + " grid_m=" + std::to_string(cfg.grid_m));

  svg_series se{"measured sup residual", {}, {}};
  svg_series sb{"uniform bound", {}, {}};
  for (int n : cfg.orders) {
    kernel_scan scan = residual_scan(n, cfg.T, cfg.grid_m);
    double s = std::sqrt(2.0 * n + 1.0);
    double ub = 17.0 * cfg.T * cfg.T / s;
    double hb = 34.0 * cfg.T * cfg.T * cfg.T / s;
    csv.row_cells({std::to_string(n), format_g17(scan.E_tilde), format_g17(ub),
                   format_g17(scan.hs_norm), format_g17(hb), scan.regime_ok ? "1" : "0"});
    se.x.push_back(n);
    se.y.push_back(scan.E_tilde);
    sb.x.push_back(n);
    sb.y.push_back(ub);
  }
  res.files.push_back(csv_name);

  svg_options opt;
  opt.title = "kernel residual vs degree (T=" + detail::format_gshort(cfg.T) + ")";
  opt.x_label = "n";
  opt.y_label = "sup |k_n - sinc_N|";
  write_svg_plot(detail::out_path(cfg, "kernel_scan.svg"), {se, sb}, opt);
  res.files.push_back("kernel_scan.svg");
  return res;
}

// -------------------------------------------------------------------- project

namespace detail {

inline basis_spec parse_basis(const experiment_config& cfg) {
  if (cfg.basis == "hermite") return basis_spec::hermite();
  if (cfg.basis == "scaled_hermite") {
    double a = cfg.alpha;
    if (a == 0.0) {
      if (!(cfg.c > 0.0)) throw config_error("project: scaled basis needs c > 0 or explicit alpha");
      a = 1.0 / std::sqrt(cfg.c);
    }
    if (!(a > 0.0)) throw config_error("project: alpha must be positive");
    return basis_spec::scaled_hermite(a);
  }
  if (cfg.basis == "legendre") return basis_spec::legendre();
  if (cfg.basis == "chebyshev") return basis_spec::chebyshev();
  throw config_error("project: unknown basis '" + cfg.basis + "'");
}

inline std::string basis_tag(const basis_spec& b) {
  switch (b.kind) {
    case basis_kind::hermite: return "hermite";
    case basis_kind::scaled_hermite: return "scaled_hermite";
    case basis_kind::legendre: return "legendre";
    default: return "chebyshev";
  }
}

struct project_run {
  std::string grid_csv;
  std::string coeff_csv;
  std::string svg;
  double err_l2_unit = 0.0;  // L2(-1,1) error
};

inline project_run project_one(const experiment_config& cfg, const signal& f, basis_spec b,
                               int order) {
  if (order < 0) throw config_error("project: negative order");
  project_run out;
  expansion e = expand(f, b, order);

  bool poly = (b.kind == basis_kind::legendre || b.kind == basis_kind::chebyshev);
  double R = poly ? 1.0 : std::max(1.0, f.support_radius.value_or(1.0));
  std::string stem = "project_" + f.name + "_" + basis_tag(b) + "_n" + std::to_string(order);

  out.grid_csv = stem + ".csv";
  {
    csv_writer csv(out_path(cfg, out.grid_csv), {"x", "f", "approx", "error"});
    csv.comment("signal=" + f.name + " basis=" + basis_tag(b) + " order=" +
                std::to_string(order) + " dilation=" + format_gshort(b.dilation()));
    int m = std::max(2, cfg.plot_points);
    for (int i = 0; i < m; ++i) {
      double x = -R + 2.0 * R * i / (m - 1);
      double fx = f.f(x);
      double sx = eval_expansion(e, x);
      csv.row({x, fx, sx, fx - sx});
    }
  }

  out.err_l2_unit = error_norm(f, e, norm_kind::l2, -1.0, 1.0);

  out.coeff_csv = stem + "_coeffs.csv";
  {
    csv_writer csv(out_path(cfg, out.coeff_csv), {"k", "coeff"});
    double T_eff = cfg.T > 0.0 ? cfg.T : 1.0;
    double W_eff = cfg.omega > 0.0 ? cfg.omega : cfg.c;
    csv.comment("budget measured_l2_unit " + format_g17(out.err_l2_unit));
    if (b.kind == basis_kind::hermite || b.kind == basis_kind::scaled_hermite) {
      double eps_t = epsilon_time(f, T_eff);
      double eps_w = W_eff > 0.0 ? epsilon_band(f, W_eff) : 1.0;
      error_budget budget =
          (b.kind == basis_kind::hermite)
              ? bound_hermite(eps_t, eps_w, T_eff, order, W_eff)
              : bound_scaled(eps_t, eps_w, T_eff, b.dilation(), order, b.dilation() * W_eff);
      for (const auto& [name, v] : budget.components)
        csv.comment("budget component " + name + " " + format_g17(v));
      csv.comment("budget theoretical " + format_g17(budget.theoretical));
      csv.comment(std::string("budget regime_ok ") + (budget.regime_ok ? "1" : "0"));
    } else if (b.kind == basis_kind::chebyshev) {
      csv.comment("budget measured_weighted_l2 " + format_g17(error_norm_weighted(f, e)));
    }
    for (int k = 0; k <= order; ++k) csv.row_cells({std::to_string(k), format_g17(e.coeffs[static_cast<size_t>(k)])});
  }

  out.svg = stem + ".svg";
  {
    svg_series sf{"f", {}, {}}, sa{"projection", {}, {}};
    int m = std::max(2, cfg.plot_points);
    for (int i = 0; i < m; ++i) {
      double x = -R + 2.0 * R * i / (m - 1);
      sf.x.push_back(x);
      sf.y.push_back(f.f(x));
      sa.x.push_back(x);
      sa.y.push_back(eval_expansion(e, x));
    }
    svg_options opt;
    opt.title = f.name + " and its " + basis_tag(b) + " projection, order " +
                std::to_string(order);
    opt.x_label = "x";
    write_svg_plot(out_path(cfg, out.svg), {sf, sa}, opt);
  }
  return out;
}

}  // namespace detail

inline run_result run_project(const experiment_config& cfg) {
  if (cfg.orders.empty()) throw config_error("project: order list is empty");
  signal f = signal_by_name(cfg.signal);
  basis_spec b = detail::parse_basis(cfg);

  run_result res;
  auto push = [&res](const detail::project_run& r) {
    res.files.push_back(r.grid_csv);
    res.files.push_back(r.coeff_csv);
    res.files.push_back(r.svg);
  };

  std::vector<detail::project_run> main_runs;
  for (int n : cfg.orders) {
    main_runs.push_back(detail::project_one(cfg, f, b, n));
    push(main_runs.back());
  }

  // a dilated-basis run is a comparison by nature: rerun with alpha = 1 and
  // tabulate both L2(-1,1) errors side by side
  if (b.kind == basis_kind::scaled_hermite) {
    std::vector<detail::project_run> unscaled;
    for (int n : cfg.orders) {
      unscaled.push_back(detail::project_one(cfg, f, basis_spec::hermite(), n));
      push(unscaled.back());
    }
    std::string name = "project_compare_scaled.csv";
    csv_writer csv(detail::out_path(cfg, name),
                   {"n", "alpha", "err_l2_scaled", "err_l2_unscaled"});
    csv.comment("L2(-1,1) projection error, dilated basis vs alpha=1");
    for (size_t i = 0; i < cfg.orders.size(); ++i)
      csv.row_cells({std::to_string(cfg.orders[i]), format_g17(b.dilation()),
                     format_g17(main_runs[i].err_l2_unit),
                     format_g17(unscaled[i].err_l2_unit)});
    res.files.push_back(name);
  }

  // default run: also emit the fixed polynomial-basis examples at N = 50
  experiment_config def = default_config("project");
  if (cfg.signal == def.signal && cfg.basis == def.basis && cfg.orders == def.orders &&
      cfg.alpha == def.alpha && cfg.c == def.c) {
    for (const char* sig : {"indicator", "hat"}) {
      signal g = signal_by_name(sig);
      for (basis_spec pb : {basis_spec::legendre(), basis_spec::chebyshev()})
        push(detail::project_one(cfg, g, pb, 50));
    }
  }
  return res;
}

// ---------------------------------------------------------------- coeff-decay

inline run_result run_coeff_decay(const experiment_config& cfg) {
  if (cfg.c_list.empty()) throw config_error("coeff-decay: c list is empty");
  run_result res;
  for (double c : cfg.c_list) {
    if (!(c > 0.0)) throw config_error("coeff-decay: c must be positive");
    int k0 = static_cast<int>(std::ceil(std::exp(1.0) * c / 2.0)) + 1;
    int k1 = k0 + 59;

    std::string name = "coeff_decay_c" + detail::format_gshort(c) + ".csv";
    csv_writer csv(detail::out_path(cfg, name),
                   {"k", "log10_abs_legendre_coeff", "log10_legendre_bound",
                    "log10_abs_chebyshev_coeff", "log10_chebyshev_bound"});
    csv.comment("c=" + detail::format_gshort(c) + ", even degrees only (odd vanish by parity)");

    svg_series ml{"legendre measured", {}, {}}, bl{"legendre bound", {}, {}};
    svg_series mc{"chebyshev measured", {}, {}}, bc{"chebyshev bound", {}, {}};
    for (int k = k0 + (k0 % 2); k <= k1; k += 2) {
      double lm = std::log10(std::abs(bandlimited_legendre_coeff(c, k)));
      double lb = std::log10(bound_legendre_coeff(c, k).value);
      double cm = std::log10(std::abs(bandlimited_chebyshev_coeff(c, k)));
      double cb = std::log10(bound_chebyshev_coeff(c, k).value);
      csv.row_cells({std::to_string(k), format_g17(lm), format_g17(lb), format_g17(cm),
                     format_g17(cb)});
      ml.x.push_back(k);
      ml.y.push_back(lm);
      bl.x.push_back(k);
      bl.y.push_back(lb);
      mc.x.push_back(k);
      mc.y.push_back(cm);
      bc.x.push_back(k);
      bc.y.push_back(cb);
    }
    res.files.push_back(name);

    svg_options opt;
    opt.title = "coefficient decay vs bound, c=" + detail::format_gshort(c);
    opt.x_label = "k";
    opt.y_label = "log10 |coefficient|";
    std::string svg_name = "coeff_decay_c" + detail::format_gshort(c) + ".svg";
    write_svg_plot(detail::out_path(cfg, svg_name), {ml, bl, mc, bc}, opt);
    res.files.push_back(svg_name);
  }
  return res;
}

// ----------------------------------------------------------------------- pswf

inline run_result run_pswf(const experiment_config& cfg) {
  if (!(cfg.c > 0.0)) throw config_error("pswf: c must be positive");
  if (cfg.pswf_order < 0) throw config_error("pswf: negative order");

  pswf_spectrum s = spectrum(cfg.c, cfg.pswf_order);  // convergence_error propagates
  std::vector<double> chi = chi_spectrum(cfg.c, s.order);
  double c = cfg.c;

  run_result res;
  std::string tag = detail::format_gshort(c);
  std::string name = "pswf_c" + tag + ".csv";
  {
    csv_writer csv(detail::out_path(cfg, name),
                   {"n", "lambda", "naz_bound", "bk_bound", "bk_regime", "piecewise_value",
                    "certified_index", "chi_lower", "chi_upper", "chi_rayleigh", "chi_ritz",
                    "above_floor"});
    csv.comment("c=" + tag + " order=" + std::to_string(s.order));
    csv.comment("bound columns are certified where their regime flag and above_floor are both 1;");
    csv.comment("below the floor the lambda column is solver output with no relative meaning");
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n = 0; n < s.order; ++n) {
      double lam = s.lambdas[static_cast<size_t>(n)];
      bool above = lam > pswf_spectrum::discretization_floor;
      double naz = lower_bound_naz(n, c);
      bool bk_ok = above && (n >= 3) && (static_cast<double>(n) >= 2.0 * c / pi);
      double bk = (n >= 3 && static_cast<double>(n) >= 2.0 * c / pi) ? lower_bound_bk(n, c) : nan;
      double pw = nan;
      int ci = -1;
      if (n + 1 <= 12) {
        piecewise_bound pb = certified_lower_bound_piecewise(n + 1, c);
        pw = pb.value;
        ci = pb.certified_index;
      }
      chi_bracket_result cb = (n < s.order - 5) ? chi_bracket(n, c, s) : chi_bracket(n, c);
      double ray = cb.rayleigh ? *cb.rayleigh : nan;
      csv.row_cells({std::to_string(n), format_g17(lam), format_g17(naz), format_g17(bk),
                     bk_ok ? "1" : "0", format_g17(pw), std::to_string(ci),
                     format_g17(cb.lower), format_g17(cb.upper), format_g17(ray),
                     format_g17(chi[static_cast<size_t>(n)]), above ? "1" : "0"});
    }
    double tr = 0.0;
    for (double l : s.lambdas) tr += l;
    double expect = 2.0 * c / pi;
    csv.comment("trace " + format_g17(tr) + " expected " + format_g17(expect) + " rel_err " +
                format_g17(std::abs(tr - expect) / expect));
  }
  res.files.push_back(name);

  std::string bname = "pswf_beta_c" + tag + ".csv";
  {
    csv_writer csv(detail::out_path(cfg, bname), {"n", "k", "beta"});
    for (int n = 0; n < s.order; ++n)
      for (int k = 0; k < s.order; ++k)
        csv.row_cells({std::to_string(n), std::to_string(k),
                       format_g17(s.beta[static_cast<size_t>(n)][static_cast<size_t>(k)])});
  }
  res.files.push_back(bname);
  return res;
}

// -------------------------------------------------------------------- run-all

inline run_result run_all(const experiment_config& cfg) {
  run_result all;
  for (const char* sub : {"kernel-scan", "project", "coeff-decay", "pswf"}) {
    experiment_config sc = default_config(sub);
    sc.out_dir = cfg.out_dir;
    run_result r;
    if (std::string(sub) == "kernel-scan")
      r = run_kernel_scan(sc);
    else if (std::string(sub) == "project")
      r = run_project(sc);
    else if (std::string(sub) == "coeff-decay")
      r = run_coeff_decay(sc);
    else
      r = run_pswf(sc);
    all.files.insert(all.files.end(), r.files.begin(), r.files.end());
  }
  std::string name = "run_all_manifest.csv";
  csv_writer csv(detail::out_path(cfg, name), {"file"});
  for (const std::string& fpath : all.files) csv.row_cells({fpath});
  all.files.push_back(name);
  return all;
}

// Dispatch by subcommand name (shared between the CLI and the tests).
inline run_result run_experiment(const experiment_config& cfg) {
  if (cfg.subcommand == "kernel-scan") return run_kernel_scan(cfg);
  if (cfg.subcommand == "project") return run_project(cfg);
  if (cfg.subcommand == "coeff-decay") return run_coeff_decay(cfg);
  if (cfg.subcommand == "pswf") return run_pswf(cfg);
  if (cfg.subcommand == "run-all") return run_all(cfg);
  throw config_error("unknown subcommand: " + cfg.subcommand);
}

}  // namespace bandlim
