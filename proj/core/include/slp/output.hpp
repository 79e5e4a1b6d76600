#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slp/mbe_solver.hpp"

namespace slp {

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for
/// non-finite values. Output is locale-independent and deterministic.
[[nodiscard]] std::string format_number(double v);

/// `z,reE+,imE+,reE-,imE-,reSbc,imSbc`
void write_snapshot_csv(std::ostream& os, const SystemState& state);

/// `t,width_sq,first_moment,n_tot,peak,ratio_re,ratio_im`; moment columns
/// are nan where the moments are undefined.
void write_observables_csv(std::ostream& os, const std::vector<Observables>& series);

/// `t,value`
void write_overlay_csv(std::ostream& os, const std::vector<double>& t,
                       const std::vector<double>& value);

/// Generic numeric table with the given header.
void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

} // namespace slp
