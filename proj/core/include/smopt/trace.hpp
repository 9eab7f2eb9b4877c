#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "smopt/types.hpp"

namespace smopt {

struct TraceRow {
  long k = 0;
  long oracle_count = 0;
  double f_true = 0;
  double phi_eta = 0;
  double gen_grad_norm = 0;
  double moreau_surrogate = 0;
  double step = 0;
  double Lhat = 0;
  long ls_steps = 0;
  std::string reason;  // empty except on the final row
};

struct Trace {
  std::vector<TraceRow> rows;
  std::string reason;  // converged | budget | stationary | max_iter

  void append(TraceRow row) {
    if (!rows.empty() && row.oracle_count <= rows.back().oracle_count)
      row.oracle_count = rows.back().oracle_count + 1;  // keep strictly increasing
    rows.push_back(std::move(row));
  }
  long oracles() const { return rows.empty() ? 0 : rows.back().oracle_count; }
  double final_f() const { return rows.empty() ? 0 : rows.back().f_true; }
  long iterations() const { return rows.empty() ? 0 : rows.back().k; }

  void write_csv(std::ostream& os) const;
};

// 17 significant digits, shortest-faithful not attempted (fixed %.17g)
std::string format_g17(double v);

}  // namespace smopt
