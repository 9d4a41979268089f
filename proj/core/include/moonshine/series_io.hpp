#pragma once

#include <iosfwd>
#include <string>

#include "moonshine/qseries.hpp"

namespace moonshine {

/// Text form: `# valuation=<v> precision=<P>` then `n<TAB>coefficient` per line.
void write_series(std::ostream& os, const QSeries& s);
std::string format_series(const QSeries& s);
QSeries read_series(std::istream& is);
QSeries parse_series(const std::string& text);

/// Human-readable prefix such as `q^-1 + 82q + 8952q^2 + O(q^3)`.
std::string pretty(const QSeries& s, std::int64_t max_terms = 8);

}  // namespace moonshine
