#pragma once
//
// Batch verdict reports over the A-D-E catalog.
//
// A report instantiates the flatness/commutativity correspondence as
// one table: for every covered (spec, lambda, sign) it records the
// flatness verdict, the independent locality verdict, the modular
// invariant row through the vacuum, and the commutative partner whose
// tower the flat part reproduces.  Nonflat rows always carry their
// finite certificate.  Rows are emitted in a canonical order (family
// A < D < E, then graph index, lambda, and sign with + first) so that
// two runs with identical inputs produce byte-identical golden
// tables; floating-point residual summaries live outside the golden
// subtree.
//
// Coverage: the A catalog at levels <= 8 with every lambda, D4..D10,
// E6, E7, and E8 with lambda <= 4, both chiralities throughout.
//
#include <string>
#include <vector>

#include "adeflat/cache.hpp"
#include "adeflat/cells.hpp"
#include "adeflat/flatness.hpp"

namespace ade {

inline constexpr const char* kToolVersion = "1.0.0";

struct ReportRow {
  std::string spec;
  int level = 0;
  int lambda = 1;
  int sign = +1;
  std::string flatness;          // "flat" | "nonflat"
  std::string locality;          // "local" | "nonlocal"
  std::vector<int> z_row0;       // support of the modular invariant row 0
  std::string flat_part_target;  // commutative partner named by theta_plus
  FlatnessCertificate certificate;  // meaningful only when nonflat
  double biunitarity_residual = 0.0;
};

struct ReportDocument {
  std::string version = kToolVersion;
  std::vector<std::string> specs;
  std::vector<ReportRow> rows;
  double max_axiom_residual = 0.0;
  double max_biunitarity_residual = 0.0;
  double max_z_residual = 0.0;

  // Full document, canonical ordering, two-space indentation.
  std::string to_json() const;
  // The gauge-invariant verdict table alone (specs + rows, integer and
  // string fields only) — the subtree compared against golden files.
  std::string golden_json() const;
};

// The commutative partner of a spec: the entry (by name) whose theta
// equals this spec's theta_plus.  Local specs name themselves.
std::string flat_part_target(const QSystemSpec& spec);

// Builds the full coverage table, resolving verdicts, modular
// invariants, and residuals through the cache when one is enabled.
ReportDocument build_report(const ArtifactCache& cache = ArtifactCache{});

// Compares the document's golden subtree against the stored golden
// table; returns true when they agree at the JSON level.
bool matches_golden(const ReportDocument& doc,
                    const std::string& golden_file_contents);

} // namespace ade
