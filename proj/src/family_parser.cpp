#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "moran/error.hpp"
#include "moran/families.hpp"

namespace moran {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits on `sep` at nesting depth zero with respect to (), [] and {}.
std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets in '" + text + "'");
    if (c == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in '" + text + "'");
  parts.push_back(trim(cur));
  return parts;
}

long parse_int(const std::string& raw) {
  const std::string t = trim(raw);
  if (t.empty()) throw ParseError("expected an integer");
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + t + "'");
  }
  if (pos != t.size()) throw ParseError("expected an integer, got '" + t + "'");
  return v;
}

std::string strip(const std::string& raw, char open, char close) {
  const std::string t = trim(raw);
  if (t.size() < 2 || t.front() != open || t.back() != close)
    throw ParseError(std::string("expected '") + open + "...'" + close + "', got '" + t + "'");
  return t.substr(1, t.size() - 2);
}

std::vector<long> parse_int_list(const std::string& raw) {
  const std::string inner = trim(strip(raw, '[', ']'));
  std::vector<long> out;
  if (inner.empty()) return out;
  for (const auto& part : split_top(inner, ',')) out.push_back(parse_int(part));
  return out;
}

// "[0 2;1]": blocks separated by ';', digits by spaces. With s <= 10 a run of
// characters such as "02" is read digit by digit.
std::vector<std::vector<int>> parse_blocks(const std::string& raw, int s) {
  const std::string inner = strip(raw, '[', ']');
  std::vector<std::vector<int>> blocks;
  for (const auto& part : split_top(inner, ';')) {
    std::istringstream is(part);
    std::vector<int> block;
    std::string tok;
    while (is >> tok) {
      if (s <= 10 && tok.size() > 1) {
        for (char c : tok) {
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("bad block digit in '" + tok + "'");
          block.push_back(c - '0');
        }
      } else {
        block.push_back(static_cast<int>(parse_int(tok)));
      }
    }
    if (block.empty()) throw ParseError("empty block in '" + raw + "'");
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<std::vector<int>> parse_levels(const std::string& raw) {
  const std::string inner = trim(strip(raw, '[', ']'));
  std::vector<std::vector<int>> levels;
  for (const auto& part : split_top(inner, ',')) {
    const std::string set_inner = trim(strip(part, '{', '}'));
    std::vector<int> level;
    if (!set_inner.empty())
      for (const auto& d : split_top(set_inner, ',')) level.push_back(static_cast<int>(parse_int(d)));
    levels.push_back(std::move(level));
  }
  return levels;
}

CantorBasis parse_basis(const std::string& raw) {
  const std::string t = trim(raw);
  if (t.rfind("geom", 0) == 0) return CantorBasis::geometric(parse_int(strip(t.substr(4), '(', ')')));
  return CantorBasis::periodic(parse_int_list(t));
}

}  // namespace

FamilySpec parse_family(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw ParseError("expected Name(key=value,...), got '" + text + "'");
  const std::string name = trim(t.substr(0, open));
  const std::string body = t.substr(open + 1, t.size() - open - 2);

  std::map<std::string, std::string> args;
  if (!trim(body).empty()) {
    for (const auto& part : split_top(body, ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value, got '" + part + "'");
      const std::string key = trim(part.substr(0, eq));
      if (!args.emplace(key, trim(part.substr(eq + 1))).second)
        throw ParseError("duplicate key '" + key + "'");
    }
  }

  auto take = [&](const std::string& key) {
    auto it = args.find(key);
    if (it == args.end()) throw ParseError(name + " needs '" + key + "='");
    std::string v = it->second;
    args.erase(it);
    return v;
  };
  auto take_int = [&](const std::string& key) { return static_cast<int>(parse_int(take(key))); };

  FamilySpec fam;
  try {
    if (name == "S") {
      fam = FamilySpec::s_family(take_int("s"));
    } else if (name == "Su") {
      const int s = take_int("s");
      fam = FamilySpec::su(s, take_int("u"));
    } else if (name == "NSu") {
      const int s = take_int("s");
      fam = FamilySpec::nega_su(s, take_int("u"));
    } else if (name == "Sminus") {
      fam = FamilySpec::sminus(take_int("s"));
    } else if (name == "Tilde") {
      fam = FamilySpec::tilde(take_int("s"));
    } else if (name == "MD") {
      fam = FamilySpec::md(take_int("s"));
    } else if (name == "MDper") {
      const int s = take_int("s");
      std::vector<int> m;
      for (long v : parse_int_list(take("m"))) m.push_back(static_cast<int>(v));
      fam = FamilySpec::md_periodic(s, std::move(m));
    } else if (name == "Blocks") {
      const int s = take_int("s");
      fam = FamilySpec::block_list(s, parse_blocks(take("B"), s));
    } else if (name == "Cantor") {
      CantorBasis basis = parse_basis(take("d"));
      fam = FamilySpec::cantor(std::move(basis), parse_levels(take("I")));
    } else {
      throw ParseError("unknown family '" + name + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("invalid " + name + " parameters: " + e.what());
  }
  if (!args.empty()) throw ParseError("unknown key '" + args.begin()->first + "' for " + name);
  return fam;
}

}  // namespace moran
