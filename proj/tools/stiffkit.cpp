// stiffkit: command-line front end. JSON reports go to stdout, a short
// human summary to stderr. Exit codes: 0 checks passed, 1 a check failed,
// 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stiffkit/code_io.hpp"
#include "stiffkit/codes.hpp"
#include "stiffkit/design.hpp"
#include "stiffkit/error.hpp"
#include "stiffkit/potential.hpp"
#include "stiffkit/report.hpp"
#include "stiffkit/stiffness.hpp"
#include "stiffkit/suite.hpp"
#include "stiffkit/transforms.hpp"

using namespace stiffkit;
using nlohmann::json;

namespace {

int threads = 0;

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InvalidArgument(what + " must be an integer, got '" + s + "'");
  return v;
}

Code construct(const std::string& name, const std::vector<std::string>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() < n) throw InvalidArgument(name + " needs " + std::to_string(n) + " parameter(s)");
  };
  if (name == "cross_polytope" || name == "cross-polytope") {
    need(1);
    return cross_polytope(parse_int(params[0], "dimension"));
  }
  if (name == "cube") {
    need(1);
    return cube(parse_int(params[0], "dimension"));
  }
  if (name == "demicube") {
    need(1);
    Parity parity = Parity::Even;
    if (params.size() > 1) {
      if (params[1] == "odd") parity = Parity::Odd;
      else if (params[1] != "even") throw InvalidArgument("demicube parity must be even or odd");
    }
    return demicube(parse_int(params[0], "dimension"), parity);
  }
  if (name == "e8" || name == "e8_roots") return e8_roots();
  if (name == "2_41" || name == "polytope_2_41") return polytope_2_41();
  if (name == "ngon") {
    need(1);
    return ngon(parse_int(params[0], "n"));
  }
  if (name == "rotated_cubes" || name == "rotated-cubes") {
    need(1);
    return rotated_cubes(parse_int(params[0], "n"), threads).code;
  }
  throw InvalidArgument("unknown code '" + name + "' (cross_polytope, cube, demicube, e8, 2_41, ngon, rotated_cubes)");
}

std::vector<Surd> parse_nodes(const std::string& text) {
  std::vector<Surd> out;
  for (const auto& item : split(text, ',')) out.push_back(Surd::parse(item));
  return out;
}

json default_tolerances() {
  return {{"float_design", "N^2 * 1e-10"}, {"dual_residual", 1e-9}, {"spectrum_merge", 1e-9}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for spherical designs and m-stiff codes"};
  app.require_subcommand(1);
  app.add_option("--threads", threads, "Worker threads (default: all cores)");
  app.set_version_flag("--version", version());

  // construct
  auto* c_construct = app.add_subcommand("construct", "Build a named code and save it as JSON");
  std::string c_name, out_file;
  std::vector<std::string> c_params;
  c_construct->add_option("name", c_name, "cross_polytope | cube | demicube | e8 | 2_41 | ngon | rotated_cubes")
      ->required();
  c_construct->add_option("params", c_params, "Constructor parameters, e.g. '5' or '5 odd'");
  c_construct->add_option("-o,--output", out_file, "Output file")->required();

  // check-design
  auto* c_check = app.add_subcommand("check-design", "Index set and design strength");
  std::string in_file;
  int nmax = 10;
  bool force_exact = false, force_float = false;
  c_check->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  c_check->add_option("--nmax", nmax, "Largest degree checked")->required();
  c_check->add_flag("--exact", force_exact, "Require exact evaluation");
  c_check->add_flag("--float", force_float, "Evaluate in floating point");

  // dual
  auto* c_dual = app.add_subcommand("dual", "Compute D_m and a stiffness certificate");
  int m = 2;
  std::string mode = "auto", nodes_text, dual_out;
  c_dual->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  c_dual->add_option("-m", m, "Number of dot values")->required();
  c_dual->add_option("--mode", mode, "auto | exact | float")->check(CLI::IsMember({"auto", "exact", "float"}));
  c_dual->add_option("--nodes", nodes_text, "Comma-separated node values, e.g. '-1/2*sqrt(2),0,1/2*sqrt(2)'");
  c_dual->add_option("-o,--output", dual_out, "Save the dual points here");

  // verify-min
  auto* c_verify = app.add_subcommand("verify-min", "Check that a dual set holds the absolute minima");
  std::string dual_file, kernels_text = "riesz:1,riesz:2,gauss:1";
  int restarts = 200;
  std::uint64_t seed = 1;
  c_verify->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  c_verify->add_option("-m", m, "Number of dot values the dual points must attain")->required();
  c_verify->add_option("--dual", dual_file, "Dual code file")->required()->check(CLI::ExistingFile);
  c_verify->add_option("--kernels", kernels_text, "Comma-separated kernels");
  c_verify->add_option("--restarts", restarts, "Random starts");
  c_verify->add_option("--seed", seed, "Random seed");

  // spectrum
  auto* c_spec = app.add_subcommand("spectrum", "Dot products of a probe with the code");
  std::string probe_text;
  c_spec->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  c_spec->add_option("--probe", probe_text, "Point index, or comma-separated coordinates (normalised)")->required();

  // transforms
  auto* c_sym = app.add_subcommand("symmetrize", "code u (-code)");
  c_sym->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  c_sym->add_option("-o,--output", out_file)->required();

  auto* c_facet = app.add_subcommand("facet", "Derived code on the sphere orthogonal to a code point");
  std::size_t point_index = 0;
  std::string t_text;
  c_facet->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  c_facet->add_option("--point", point_index, "Index of x")->required();
  c_facet->add_option("--t", t_text, "Dot value, e.g. 1/6")->required();
  c_facet->add_option("-o,--output", out_file)->required();

  auto* c_glue = app.add_subcommand("glue", "Glue two m-stiff codes on the same sphere");
  std::string in_file2;
  c_glue->add_option("file1", in_file)->required()->check(CLI::ExistingFile);
  c_glue->add_option("file2", in_file2)->required()->check(CLI::ExistingFile);
  c_glue->add_option("-m", m)->required();
  c_glue->add_option("--seed", seed);
  c_glue->add_option("-o,--output", out_file)->required();

  auto* c_rot = app.add_subcommand("rotated-cubes", "n rotated copies of the cube on S^2");
  int rot_n = 2;
  c_rot->add_option("n", rot_n)->required();
  c_rot->add_option("-o,--output", out_file)->required();

  auto* c_suite = app.add_subcommand("suite", "Reproduction battery");
  bool paper = false;
  SuiteOptions suite_opts;
  c_suite->add_flag("--paper", paper, "Run the full battery")->required();
  c_suite->add_option("--seed", suite_opts.seed);
  c_suite->add_option("--restarts", suite_opts.restarts, "Restarts for the small universal-minimum checks");
  c_suite->add_option("--restarts-241", suite_opts.restarts_241, "Restarts for the 2160-point code");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_construct) {
      Code code = construct(c_name, c_params);
      save_code(code, out_file);
      emit(envelope("construct", {{"code", code_name(code)}, {"size", code_size(code)}, {"exact", is_exact(code)},
                                  {"file", out_file}},
                    std::nullopt, json::object()));
      std::cerr << code_name(code) << ": " << code_size(code) << " points -> " << out_file << "\n";
      return 0;
    }
    if (*c_check) {
      if (force_exact && force_float) throw InvalidArgument("--exact and --float are exclusive");
      Code code = load_code(in_file);
      if (force_exact && !is_exact(code)) throw InvalidArgument("--exact needs an exact (integer) code file");
      auto rep = index_set(code, nmax, force_float, threads);
      emit(envelope("check-design", to_json(rep), std::nullopt, default_tolerances()));
      std::cerr << rep.code_name << ": strength " << rep.strength << ", index set {";
      bool first = true;
      for (int n : rep.index_set) {
        std::cerr << (first ? "" : ",") << n;
        first = false;
      }
      std::cerr << "} up to " << nmax << (rep.exact ? " (exact)" : " (float)") << "\n";
      return 0;
    }
    if (*c_dual) {
      Code code = load_code(in_file);
      DualSearchOptions opts;
      opts.threads = threads;
      opts.mode = mode == "exact" ? SearchMode::Exact : mode == "float" ? SearchMode::Float : SearchMode::Auto;
      if (!nodes_text.empty()) opts.exact_nodes = parse_nodes(nodes_text);
      auto cert = certify_stiff(code, m, opts);
      if (!dual_out.empty()) save_code(cert.dual.points, dual_out);
      emit(envelope("dual", to_json(cert), std::nullopt, default_tolerances()));
      std::cerr << cert.code_name << ", m = " << m << ": strength " << cert.design_strength << ", |D_" << m
                << "| = " << cert.dual.size() << (cert.dual.exact ? " (exact)" : " (float)") << ", "
                << (cert.stiff ? "stiff" : "not stiff") << "\n";
      return cert.stiff ? 0 : 1;
    }
    if (*c_verify) {
      Code code = load_code(in_file);
      Code dual = load_code(dual_file);
      std::vector<Kernel> kernels;
      for (const auto& k : split(kernels_text, ',')) kernels.push_back(Kernel::parse(k));
      bool spectra_ok = true;
      const FloatCode fd = to_float(dual);
      for (std::size_t i = 0; i < fd.size(); ++i)
        spectra_ok = spectra_ok && spectrum(fd.point(i), code, 1e-8, 1e-8).distinct_count() <= static_cast<std::size_t>(m);
      MinimizeOptions mo;
      mo.restarts = restarts;
      mo.seed = seed;
      mo.threads = threads;
      auto reps = verify_universal_minimum(code, dual, kernels, mo);
      json items = json::array();
      bool all = spectra_ok;
      std::cerr << code_name(code) << " vs " << code_name(dual) << " (" << restarts << " restarts, seed " << seed
                << ")\n";
      std::fprintf(stderr, "  %-12s %-6s %-22s %-14s %s\n", "kernel", "pass", "dual value", "margin", "argmin dist");
      for (const auto& r : reps) {
        items.push_back(to_json(r));
        all = all && r.pass;
        std::fprintf(stderr, "  %-12s %-6s %-22.15g %-14.3e %.3e\n", r.kernel.c_str(), r.pass ? "yes" : "NO",
                     r.dual_value, r.margin, r.max_argmin_distance);
      }
      if (!spectra_ok) std::cerr << "  some dual point forms more than " << m << " distinct dots with the code\n";
      json tol = {{"dual_equal_rel", 1e-9}, {"no_lower_rel", 1e-8}, {"argmin_distance", 1e-5},
                  {"gradient", 1e-10}, {"cluster", 1e-6}};
      emit(envelope("verify-min", {{"dual_spectra_ok", spectra_ok}, {"kernels", items}, {"pass", all}}, seed, tol));
      return all ? 0 : 1;
    }
    if (*c_spec) {
      Code code = load_code(in_file);
      SpectrumReport rep;
      const auto parts = split(probe_text, ',');
      const auto* lc = std::get_if<LatticeCode>(&code);
      if (parts.size() == 1) {
        const auto index = static_cast<std::size_t>(parse_int(parts[0], "probe index"));
        if (index >= code_size(code)) throw InvalidArgument("probe index out of range");
        if (lc) rep = spectrum(ExactPoint::of(*lc, index), *lc);
        else rep = spectrum(to_float(code).point(index), code);
      } else {
        bool integral = true;
        std::vector<std::int64_t> iv;
        std::vector<double> fv;
        for (const auto& p : parts) {
          std::size_t used = 0;
          long long v = 0;
          try {
            v = std::stoll(p, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          integral = integral && used == p.size();
          iv.push_back(v);
          fv.push_back(parse_rational(p).get_d());
        }
        if (static_cast<int>(parts.size()) != ambient_dim(code)) throw InvalidArgument("probe has the wrong dimension");
        if (lc && integral) {
          rep = spectrum(ExactPoint::from_vector(iv), *lc);
        } else {
          double norm = 0;
          for (double x : fv) norm += x * x;
          if (norm == 0) throw InvalidArgument("probe must be nonzero");
          for (auto& x : fv) x /= std::sqrt(norm);
          rep = spectrum(fv, code);
        }
      }
      emit(envelope("spectrum", to_json(rep), std::nullopt, {{"merge", 1e-9}}));
      std::cerr << rep.distinct_count() << " distinct values:";
      for (const auto& e : rep.entries)
        std::cerr << " " << (e.exact ? e.exact->str() : std::to_string(e.value)) << " (x" << e.multiplicity << ")";
      std::cerr << "\n";
      return 0;
    }
    if (*c_sym) {
      Code out = symmetrize(load_code(in_file));
      save_code(out, out_file);
      emit(envelope("symmetrize", {{"code", code_name(out)}, {"size", code_size(out)}, {"file", out_file}},
                    std::nullopt, json::object()));
      std::cerr << code_name(out) << ": " << code_size(out) << " points -> " << out_file << "\n";
      return 0;
    }
    if (*c_facet) {
      Code out = facet_derive(load_code(in_file), point_index, Surd::parse(t_text));
      save_code(out, out_file);
      emit(envelope("facet", {{"code", code_name(out)}, {"size", code_size(out)}, {"exact", is_exact(out)},
                              {"file", out_file}},
                    std::nullopt, {{"select", 1e-9}}));
      std::cerr << code_name(out) << ": " << code_size(out) << " points -> " << out_file << "\n";
      return 0;
    }
    if (*c_glue) {
      auto g = glue(load_code(in_file), load_code(in_file2), m, seed, threads);
      save_code(g.code, out_file);
      emit(envelope("glue", to_json(g), seed, {{"spectrum", 1e-8}, {"disjoint", 1e-6}}));
      std::cerr << code_name(g.code) << ": " << code_size(g.code) << " points, strength " << g.design_strength
                << ", z2 forms " << g.z2_distinct << " dots -> " << out_file << "\n";
      return g.stiff ? 0 : 1;
    }
    if (*c_rot) {
      auto r = rotated_cubes(rot_n, threads);
      save_code(r.code, out_file);
      emit(envelope("rotated-cubes", to_json(r), std::nullopt, default_tolerances()));
      std::cerr << code_name(r.code) << ": " << code_size(r.code) << " points, |D_2| = " << r.certificate.dual.size()
                << (r.dual_is_axis ? " (the z-axis poles)" : "") << "\n";
      return r.certificate.stiff ? 0 : 1;
    }
    if (*c_suite) {
      suite_opts.threads = threads;
      auto results = run_suite(suite_opts, [](const CriterionResult& r) {
        std::fprintf(stderr, "%2d  %-4s  %7.2fs  %s\n      %s\n", r.id, r.pass ? "PASS" : "FAIL", r.seconds,
                     r.title.c_str(), r.detail.c_str());
      });
      json items = json::array();
      bool all = true;
      for (const auto& r : results) {
        all = all && r.pass;
        items.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
      }
      emit(envelope("suite", {{"criteria", items}, {"pass", all}}, suite_opts.seed, json::object()));
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
