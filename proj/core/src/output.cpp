#include "slp/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "slp/errors.hpp"

namespace slp {

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void write_snapshot_csv(std::ostream& os, const SystemState& state)
{
    os << "z,reE+,imE+,reE-,imE-,reSbc,imSbc\n";
    for (std::size_t i = 0; i < state.grid.n_points; ++i) {
        os << format_number(state.grid.z(i)) << ',' << format_number(state.e_plus[i].real()) << ','
           << format_number(state.e_plus[i].imag()) << ',' << format_number(state.e_minus[i].real())
           << ',' << format_number(state.e_minus[i].imag()) << ','
           << format_number(state.s[i].real()) << ',' << format_number(state.s[i].imag()) << '\n';
    }
}

void write_observables_csv(std::ostream& os, const std::vector<Observables>& series)
{
    const double nan = std::nan("");
    os << "t,width_sq,first_moment,n_tot,peak,ratio_re,ratio_im\n";
    for (const auto& o : series) {
        os << format_number(o.t) << ',' << format_number(o.moments_defined ? o.width_sq : nan) << ','
           << format_number(o.moments_defined ? o.first_moment : nan) << ','
           << format_number(o.n_tot) << ',' << format_number(o.peak) << ','
           << format_number(o.ratio.real()) << ',' << format_number(o.ratio.imag()) << '\n';
    }
}

void write_overlay_csv(std::ostream& os, const std::vector<double>& t,
                       const std::vector<double>& value)
{
    write_table_csv(os, {"t", "value"}, {t, value});
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns)
{
    if (header.size() != columns.size()) throw ConfigError("write_table_csv: header/column mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw ConfigError("write_table_csv: ragged columns");
    for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < columns.size(); ++j)
            os << (j ? "," : "") << format_number(columns[j][r]);
        os << '\n';
    }
}

} // namespace slp
