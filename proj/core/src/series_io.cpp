#include "moonshine/series_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace moonshine {

void write_series(std::ostream& os, const QSeries& s) {
  os << "# valuation=" << s.valuation() << " precision=" << s.precision() << '\n';
  for (std::int64_t n = s.valuation(); n < s.precision(); ++n) os << n << '\t' << s.coeff(n) << '\n';
}

std::string format_series(const QSeries& s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

QSeries read_series(std::istream& is) {
  std::string line;
  std::int64_t v = 0, p = 0;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (std::sscanf(line.c_str(), "# valuation=%ld precision=%ld", &v, &p) == 2) {
      header = true;
      break;
    }
    throw ParseError("missing q-expansion header");
  }
  if (!header) throw ParseError("missing q-expansion header");
  if (p <= v) throw ParseError("empty q-expansion window");
  std::vector<Integer> c(static_cast<std::size_t>(p - v));
  std::vector<bool> seen(c.size(), false);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected n<TAB>coefficient: " + line);
    std::int64_t n = 0;
    try {
      n = std::stoll(line.substr(0, tab));
    } catch (const std::exception&) {
      throw ParseError("bad exponent: " + line);
    }
    if (n < v || n >= p) throw ParseError("exponent outside window: " + line);
    if (c[n - v].set_str(line.substr(tab + 1), 10) != 0) throw ParseError("bad coefficient: " + line);
    seen[n - v] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ParseError("missing coefficient for q^" + std::to_string(v + static_cast<std::int64_t>(i)));
  return QSeries(v, std::move(c));
}

QSeries parse_series(const std::string& text) {
  std::istringstream is(text);
  return read_series(is);
}

std::string pretty(const QSeries& s, std::int64_t max_terms) {
  std::ostringstream os;
  std::int64_t shown = 0;
  std::int64_t n = s.valuation();
  for (; n < s.precision() && shown < max_terms; ++n) {
    Integer c = s.coeff(n);
    if (c == 0) continue;
    const bool neg = c < 0;
    if (shown == 0)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (neg) c = -c;
    if (c != 1 || n == 0) os << c;
    if (n != 0) os << 'q';
    if (n != 0 && n != 1) os << '^' << n;
    ++shown;
  }
  if (shown == 0) os << '0';
  const std::int64_t tail = shown < max_terms ? s.precision() : n;
  if (tail == 1)
    os << " + O(q)";
  else
    os << " + O(q^" << tail << ')';
  return os.str();
}

}  // namespace moonshine
