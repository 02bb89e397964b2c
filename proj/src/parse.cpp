#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "linrem/error.hpp"
#include "linrem/linsys.hpp"

namespace linrem {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split(std::string_view s, char sep_ws) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == sep_ws)) ++i;
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\r' || s[j] == sep_ws)) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::int64_t to_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || first == tok.data() + tok.size()) {
    syntax(line, "expected integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = split(raw, ' ');
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    pos = end + 1;
  }

  std::size_t cur = 0;
  auto next = [&](const char* what) -> const Line& {
    if (cur >= lines.size()) syntax(number, std::string("unexpected end of input, expected ") + what);
    return lines[cur++];
  };

  const Line& fl = next("'field'");
  if (fl.tokens.size() != 2 || fl.tokens[0] != "field") syntax(fl.number, "expected 'field <q>'");
  const std::int64_t q = to_int(fl.tokens[1], fl.number);
  if (q < 2) syntax(fl.number, "field size must be >= 2");
  PrimeField field(static_cast<std::uint64_t>(q));

  const Line& sl = next("'system'");
  if (sl.tokens.size() != 3 || sl.tokens[0] != "system") syntax(sl.number, "expected 'system <ell> <p>'");
  const std::int64_t ell = to_int(sl.tokens[1], sl.number);
  const std::int64_t p = to_int(sl.tokens[2], sl.number);
  if (ell < 1 || p < 2 || ell >= p) syntax(sl.number, "need 1 <= ell < p");

  Matrix M(static_cast<std::size_t>(ell), static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < ell; ++i) {
    const Line& rl = next("matrix row");
    if (rl.tokens.size() != static_cast<std::size_t>(p)) {
      syntax(rl.number, "expected " + std::to_string(p) + " coefficients");
    }
    for (std::int64_t j = 0; j < p; ++j) M(i, j) = field.reduce(to_int(rl.tokens[j], rl.number));
  }

  const Line& bl = next("'rhs'");
  if (bl.tokens.empty() || bl.tokens[0] != "rhs" || bl.tokens.size() != static_cast<std::size_t>(ell) + 1) {
    syntax(bl.number, "expected 'rhs' followed by " + std::to_string(ell) + " integers");
  }
  std::vector<Residue> b;
  for (std::int64_t i = 0; i < ell; ++i) b.push_back(field.reduce(to_int(bl.tokens[i + 1], bl.number)));

  std::vector<std::vector<Residue>> sets;
  for (std::int64_t j = 0; j < p; ++j) {
    const Line& line = next("'set'");
    if (line.tokens[0] != "set" || line.tokens.size() > 2) syntax(line.number, "expected 'set all' or 'set <v1>,<v2>,...'");
    std::vector<Residue> s;
    if (line.tokens.size() == 2 && line.tokens[1] == "all") {
      for (std::uint32_t v = 0; v < field.q(); ++v) s.push_back(v);
    } else if (line.tokens.size() == 2) {
      for (auto tok : split(line.tokens[1], ',')) s.push_back(field.reduce(to_int(tok, line.number)));
      std::vector<Residue> sorted = s;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        syntax(line.number, "duplicate element (after reduction mod q)");
      }
    }
    sets.push_back(std::move(s));
  }
  if (cur != lines.size()) syntax(lines[cur].number, "trailing content");

  LinearSystem sys(field, std::move(M), std::move(b));
  return Instance{std::move(sys), SetFamily(field.q(), std::move(sets))};
}

std::string format_instance(const LinearSystem& sys, const SetFamily& sets) {
  std::ostringstream out;
  out << "field " << sys.field().q() << "\n";
  out << "system " << sys.ell() << " " << sys.p() << "\n";
  for (std::size_t i = 0; i < sys.ell(); ++i) {
    for (std::size_t j = 0; j < sys.p(); ++j) out << (j ? " " : "") << sys.M()(i, j);
    out << "\n";
  }
  out << "rhs";
  for (Residue v : sys.b()) out << " " << v;
  out << "\n";
  for (std::size_t j = 0; j < sets.arity(); ++j) {
    out << "set";
    if (sets.size(j) == sys.field().q()) {
      out << " all";
    } else if (sets.size(j) > 0) {
      out << " ";
      for (std::size_t k = 0; k < sets[j].size(); ++k) out << (k ? "," : "") << sets[j][k];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace linrem
