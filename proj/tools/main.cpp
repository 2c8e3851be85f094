//
// adeflat — batch command-line surface for the A-D-E connection engine.
//
// Commands:
//   catalog                      list the Q-system catalog
//   fusion-check --level k       fusion category axiom residuals
//   cells --graph G              solved bi-unitary connection for G
//   induce --graph G --lambda l --sign s   alpha-induced connection
//   flatness --graph G --lambda l --sign s [--depth d]   verdict JSON
//   zmatrix --graph G            modular invariant matrix JSON
//   report --all [--golden f]    full verdict table over the catalog
//
// Exit codes: 0 success, 1 errors (unknown inputs, residuals beyond
// tolerance), 2 verdict-table mismatch against a supplied golden file.
//
// All numeric tolerances are surfaced as flags with the library
// defaults; the only randomness in the engine is the deterministic
// seed schedule of the decomposition solver, which is logged at
// startup so identical inputs and versions give identical outputs.
//
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "adeflat/cache.hpp"
#include "adeflat/cells.hpp"
#include "adeflat/flatness.hpp"
#include "adeflat/fusion_data.hpp"
#include "adeflat/homs.hpp"
#include "adeflat/induction.hpp"
#include "adeflat/intertwiner.hpp"
#include "adeflat/report.hpp"

namespace {

struct GlobalOptions {
  std::string cache_dir;          // empty: fall back to ADEFLAT_CACHE
  double tol_construct = 1e-9;    // axiom / construction residual bound
  double tol_verdict = 1e-8;      // bi-unitarity / invariant residual bound
  bool quiet = false;
};

ade::ArtifactCache make_cache(const GlobalOptions& g) {
  if (!g.cache_dir.empty())
    return ade::ArtifactCache{std::filesystem::path(g.cache_dir)};
  return ade::ArtifactCache::from_environment();
}

void log_run_header(const GlobalOptions& g, const ade::ArtifactCache& cache) {
  if (g.quiet) return;
  std::ostringstream seeds;
  for (unsigned s : ade::decomposition_seed_schedule())
    seeds << (seeds.tellp() > 0 ? "," : "") << s;
  std::cerr << "adeflat " << ade::kToolVersion
            << " | seed schedule [" << seeds.str() << "]"
            << " | tol-construct " << g.tol_construct
            << " | tol-verdict " << g.tol_verdict << " | cache "
            << (cache.enabled() ? cache.dir().string() : "disabled")
            << '\n';
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text << '\n';
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return +1;
  if (s == "-" || s == "-1") return -1;
  throw CLI::ValidationError("--sign", "expected one of +, -, +1, -1");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json biunitarity_json(const ade::Connection& w) {
  const ade::BiunitarityReport rep = ade::check_biunitarity(w);
  return {{"unitarity", rep.unitarity_residual},
          {"renorm", rep.renorm_residual},
          {"max_residual", rep.max_residual()}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"A-D-E bi-unitary connection engine"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--cache-dir", g.cache_dir,
                 "Artifact cache directory (default: ADEFLAT_CACHE)");
  app.add_option("--tol-construct", g.tol_construct,
                 "Axiom/construction residual tolerance")
      ->capture_default_str();
  app.add_option("--tol-verdict", g.tol_verdict,
                 "Bi-unitarity/invariant residual tolerance")
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress the run header on stderr");

  // catalog
  CLI::App* cmd_catalog = app.add_subcommand("catalog", "List catalog specs");

  // fusion-check
  int level = 1;
  CLI::App* cmd_fusion =
      app.add_subcommand("fusion-check", "Verify fusion category axioms");
  cmd_fusion->add_option("--level", level, "SU(2) level k")
      ->required()
      ->check(CLI::Range(1, 28));

  // cells
  std::string graph, out_path;
  std::optional<int> cells_level;
  CLI::App* cmd_cells =
      app.add_subcommand("cells", "Solve the catalog connection for a graph");
  cmd_cells->add_option("--graph", graph, "Catalog graph name, e.g. E6")
      ->required();
  cmd_cells->add_option("--level", cells_level,
                        "Expected level (validated against the catalog)");
  cmd_cells->add_option("--out", out_path, "Write JSON here");

  // induce
  int lambda = 1;
  std::string sign_text = "+";
  CLI::App* cmd_induce =
      app.add_subcommand("induce", "Alpha-induced connection for a sector");
  cmd_induce->add_option("--graph", graph, "Catalog graph name")->required();
  cmd_induce->add_option("--lambda", lambda, "Sector label")->required();
  cmd_induce->add_option("--sign", sign_text, "Chirality + or -")
      ->capture_default_str();
  cmd_induce->add_option("--out", out_path, "Write JSON here");

  // flatness
  int depth = -1;
  CLI::App* cmd_flat =
      app.add_subcommand("flatness", "Flatness verdict for a sector");
  cmd_flat->add_option("--graph", graph, "Catalog graph name")->required();
  cmd_flat->add_option("--lambda", lambda, "Sector label")->required();
  cmd_flat->add_option("--sign", sign_text, "Chirality + or -")
      ->capture_default_str();
  cmd_flat->add_option("--depth", depth,
                       "Tower depth (default: 2 x graph diameter)");
  cmd_flat->add_option("--out", out_path, "Write JSON here");

  // zmatrix
  CLI::App* cmd_z =
      app.add_subcommand("zmatrix", "Modular invariant matrix for a graph");
  cmd_z->add_option("--graph", graph, "Catalog graph name")->required();
  cmd_z->add_option("--out", out_path, "Write JSON here");

  // report
  bool report_all = false;
  bool emit_golden = false;
  std::string golden_path;
  CLI::App* cmd_report =
      app.add_subcommand("report", "Verdict table over the full catalog");
  cmd_report->add_flag("--all", report_all, "Cover the full catalog")
      ->required();
  cmd_report->add_option("--golden", golden_path,
                         "Compare against this golden table (exit 2 on "
                         "mismatch)");
  cmd_report->add_flag("--emit-golden", emit_golden,
                       "Print the golden subtree instead of the full report");
  cmd_report->add_option("--out", out_path, "Write JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ade::ArtifactCache cache = make_cache(g);
    log_run_header(g, cache);

    if (cmd_catalog->parsed()) {
      nlohmann::json j = nlohmann::json::array();
      for (const ade::QSystemSpec& spec : ade::catalog())
        j.push_back(nlohmann::json::parse(spec.to_json()));
      emit(j.dump(2), "");
      return 0;
    }

    if (cmd_fusion->parsed()) {
      const ade::FusionCategoryData cat(level);
      const ade::AxiomReport rep = cat.verify_axioms();
      nlohmann::json j;
      j["level"] = level;
      j["pentagon"] = rep.pentagon;
      j["hexagon"] = rep.hexagon;
      j["f_unitarity"] = rep.f_unitarity;
      j["verlinde"] = rep.verlinde;
      j["pentagon_exhaustive"] = rep.pentagon_exhaustive;
      j["hexagon_exhaustive"] = rep.hexagon_exhaustive;
      j["pentagon_instances"] = rep.pentagon_instances;
      j["hexagon_instances"] = rep.hexagon_instances;
      j["max_residual"] = rep.max_residual();
      emit(j.dump(2), "");
      if (rep.max_residual() > g.tol_construct) {
        std::cerr << "axiom residual " << rep.max_residual()
                  << " exceeds tolerance " << g.tol_construct << '\n';
        return 1;
      }
      return 0;
    }

    if (cmd_cells->parsed()) {
      const ade::QSystemSpec spec = ade::find_spec(graph);
      if (cells_level && *cells_level != spec.level)
        throw std::runtime_error(
            graph + " sits at level " + std::to_string(spec.level) +
            ", not " + std::to_string(*cells_level));
      const std::string payload = cache.get(
          "cells/" + spec.name + "/v" + ade::kToolVersion, [&] {
            const ade::Connection w = ade::ghj_cells(spec);
            nlohmann::json j;
            j["connection"] = nlohmann::json::parse(w.to_json());
            j["biunitarity"] = biunitarity_json(w);
            return j.dump(2);
          });
      emit(payload, out_path);
      const double res =
          nlohmann::json::parse(payload)["biunitarity"]["max_residual"]
              .get<double>();
      if (res > g.tol_verdict) {
        std::cerr << "bi-unitarity residual " << res
                  << " exceeds tolerance " << g.tol_verdict << '\n';
        return 1;
      }
      return 0;
    }

    if (cmd_induce->parsed()) {
      const int sign = parse_sign(sign_text);
      const ade::QSystemSpec spec = ade::find_spec(graph);
      const std::string payload = cache.get(
          "induce/" + spec.name + "/lambda=" + std::to_string(lambda) +
              "/sign=" + (sign > 0 ? "+" : "-") + "/v" + ade::kToolVersion,
          [&] {
            const ade::InducedConnection ind =
                ade::induce(spec, lambda, sign);
            nlohmann::json j = nlohmann::json::parse(ind.to_json());
            j["biunitarity"] = biunitarity_json(ind.base);
            return j.dump(2);
          });
      emit(payload, out_path);
      const double res =
          nlohmann::json::parse(payload)["biunitarity"]["max_residual"]
              .get<double>();
      if (res > g.tol_verdict) {
        std::cerr << "bi-unitarity residual " << res
                  << " exceeds tolerance " << g.tol_verdict << '\n';
        return 1;
      }
      return 0;
    }

    if (cmd_flat->parsed()) {
      const int sign = parse_sign(sign_text);
      const ade::QSystemSpec spec = ade::find_spec(graph);
      const std::string payload = cache.get(
          "verdict/" + spec.name + "/lambda=" + std::to_string(lambda) +
              "/sign=" + (sign > 0 ? "+" : "-") + "/depth=" +
              (depth < 0 ? "default" : std::to_string(depth)) + "/v" +
              ade::kToolVersion,
          [&] { return ade::check_flatness(spec, lambda, sign, depth)
                    .to_json(); });
      emit(payload, out_path);
      return 0;
    }

    if (cmd_z->parsed()) {
      const ade::QSystemSpec spec = ade::find_spec(graph);
      const std::string payload =
          cache.get("zmatrix/" + spec.name + "/v" + ade::kToolVersion,
                    [&] { return ade::z_matrix(spec).to_json(); });
      emit(payload, out_path);
      return 0;
    }

    if (cmd_report->parsed()) {
      const ade::ReportDocument doc = ade::build_report(cache);
      emit(emit_golden ? doc.golden_json() : doc.to_json(), out_path);
      if (!golden_path.empty() &&
          !ade::matches_golden(doc, read_file(golden_path))) {
        std::cerr << "verdict table does not match golden file "
                  << golden_path << '\n';
        return 2;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
