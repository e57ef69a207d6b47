#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "pspin/one_rsb.hpp"

namespace pspin::cli {

/// One row of a phase-diagram sweep. m and q are present exactly when the
/// phase is OneRSB; max_f_violation refers to the criterion curve of the
/// reported measure (the Dirac mass at the origin when no verified two-atom
/// measure exists) and parisi_value to the same measure.
struct PhasePoint {
  int p;
  double beta;
  Phase phase;
  std::optional<double> m;
  std::optional<double> q;
  double max_f_violation;
  double parisi_value;
};

/// Shortest 17-significant-digit decimal form, '.' decimal point, no locale.
std::string format_double(double v);

std::string csv_header();
std::string to_csv_row(const PhasePoint& point);
nlohmann::json to_json(const PhasePoint& point);
PhasePoint phase_point_from_json(const nlohmann::json& j);

struct SweepParams {
  int p;
  double beta_min;
  double beta_max;
  int steps;
  int quad_order = 200;
  int grid = 2001;
  bool warm_start = true;
  std::string format = "csv";  // csv | json
};

/// Runs the sweep, writing rows to `out` (CSV stream or a JSON array).
/// Sequential in beta; the previous row's solution warm-starts the next one
/// unless warm_start is off. Deterministic byte-for-byte for fixed params.
void run_sweep(const SweepParams& params, std::ostream& out);

/// Exit codes: 0 ok, 1 usage, 2 SK no-transition, 3 solver bracket failure,
/// 4 lemma verification failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pspin::cli
