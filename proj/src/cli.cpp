#include "moran/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "moran/boxcount.hpp"
#include "moran/cylinders.hpp"
#include "moran/dimension.hpp"
#include "moran/error.hpp"
#include "moran/verify.hpp"

namespace moran::cli {

using json = nlohmann::ordered_json;

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

CylinderAddress parse_address(const std::string& text) {
  CylinderAddress addr;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
  if (t.empty()) return addr;
  std::stringstream ss(t);
  std::string tok;
  bool any_gap = false, all_gap = true;
  while (std::getline(ss, tok, ',')) {
    const auto at = tok.find('@');
    try {
      std::size_t pos = 0;
      const std::string sym = tok.substr(0, at);
      addr.symbols.push_back(std::stoi(sym, &pos));
      if (pos != sym.size()) throw std::invalid_argument(tok);
      if (at != std::string::npos) {
        const std::string gap = tok.substr(at + 1);
        addr.gaps.push_back(std::stoi(gap, &pos));
        if (pos != gap.size()) throw std::invalid_argument(tok);
        any_gap = true;
      } else {
        all_gap = false;
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad address entry '" + tok + "'");
    }
  }
  if (any_gap && !all_gap) throw ParseError("give a gap for every entry or for none");
  return addr;
}

DigitString parse_digits(const std::string& text, int base) {
  DigitString d;
  d.base = base;
  // An optional leading "0." marks the radix point; digits follow it.
  const std::string body = text.rfind("0.", 0) == 0 ? text.substr(2) : text;
  const auto open = body.find('(');
  const std::string head = body.substr(0, open);
  std::string tail;
  if (open != std::string::npos) {
    const auto close = body.find(')', open);
    if (close == std::string::npos || close + 1 != body.size()) throw ParseError("bad repeating block in '" + text + "'");
    tail = body.substr(open + 1, close - open - 1);
  }
  auto read = [&](const std::string& part) {
    std::vector<int> out;
    if (base <= 10 && part.find(' ') == std::string::npos) {
      for (char c : part) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad digit '" + std::string(1, c) + "'");
        out.push_back(c - '0');
      }
      return out;
    }
    std::istringstream is(part);
    std::string tok;
    while (is >> tok) {
      try {
        out.push_back(std::stoi(tok));
      } catch (const std::logic_error&) {
        throw ParseError("bad digit '" + tok + "'");
      }
    }
    return out;
  };
  d.digits = read(head);
  d.period = read(tail);
  if (open != std::string::npos && d.period.empty()) throw ParseError("empty repeating block");
  validate(d);
  return d;
}

namespace {

struct Table {
  std::string key;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Output {
  json doc = json::object();
  std::optional<Table> table;
};

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

json rat(const Rational& x) { return to_string(x); }

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Output& o, const std::string& format, std::ostream& os) {
  if (format == "json") {
    json doc = o.doc;
    if (o.table) {
      json rows = json::array();
      for (const auto& r : o.table->rows) {
        json row = json::object();
        for (std::size_t i = 0; i < r.size(); ++i) row[o.table->columns[i]] = r[i];
        rows.push_back(std::move(row));
      }
      doc[o.table->key] = std::move(rows);
    }
    os << doc.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    if (o.table) {
      for (std::size_t i = 0; i < o.table->columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(o.table->columns[i]);
      os << "\n";
      for (const auto& r : o.table->rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(r[i]));
        os << "\n";
      }
    } else {
      os << "key,value\n";
      for (const auto& [k, v] : o.doc.items()) os << csv_escape(k) << "," << csv_escape(cell_text(v)) << "\n";
    }
    return;
  }
  for (const auto& [k, v] : o.doc.items()) os << k << ": " << cell_text(v) << "\n";
  if (o.table) {
    std::vector<std::size_t> w;
    for (const auto& c : o.table->columns) w.push_back(c.size());
    for (const auto& r : o.table->rows)
      for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], cell_text(r[i]).size());
    if (!o.doc.empty()) os << "\n";
    for (std::size_t i = 0; i < o.table->columns.size(); ++i)
      os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << o.table->columns[i];
    os << "\n";
    for (const auto& r : o.table->rows) {
      for (std::size_t i = 0; i < r.size(); ++i)
        os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << cell_text(r[i]);
      os << "\n";
    }
  }
}

std::string digits_text(const std::vector<int>& ds, int base) {
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (base > 10 && i) out += ' ';
    out += std::to_string(ds[i]);
  }
  return out;
}

std::string block_text(const std::vector<int>& b, int base) { return digits_text(b, base); }

json interval_json(const IntervalR& iv) { return json::array({rat(iv.lo), rat(iv.hi)}); }

Output cmd_dim(const FamilySpec& fam) {
  const DimensionResult r = family_dimension(fam);
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["alpha"] = num(r.alpha);
  o.doc["method"] = to_string(r.method);
  o.doc["residual"] = num(r.residual);
  o.doc["bracket"] = json::array({num(r.bracket_lo), num(r.bracket_hi)});
  o.doc["iterations"] = r.iterations;
  o.doc["degenerate"] = r.degenerate;
  if (r.cross_check) o.doc["cross_check"] = num(*r.cross_check);
  if (r.exact) o.doc["exact"] = rat(*r.exact);
  if (!r.note.empty()) o.doc["note"] = r.note;
  return o;
}

Output cmd_blocks(const FamilySpec& fam) {
  const BlockSet b = blocks_of_family(fam);
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["count"] = b.size();
  json hist = json::object();
  for (const auto& [k, n] : b.histogram) hist[std::to_string(k)] = n;
  o.doc["histogram"] = hist;
  o.doc["degenerate"] = b.degenerate();
  if (b.tail) {
    std::ostringstream t;
    t << b.tail->count << " block(s) of each length " << b.tail->first << ", " << b.tail->first + b.tail->step
      << ", ...";
    o.doc["analytic_tail"] = t.str();
  }
  Table t{"blocks", {"block", "length"}, {}};
  for (const auto& blk : b.blocks) t.rows.push_back({block_text(blk, fam.s), blk.size()});
  o.table = std::move(t);
  return o;
}

Output cmd_eval(const FamilySpec& fam, const std::string& addr_text, const std::string& tail_text) {
  const CylinderAddress addr = parse_address(addr_text);
  std::optional<CylinderAddress> tail;
  if (!tail_text.empty()) tail = parse_address(tail_text);
  validate(fam, addr);
  const Rational v = eval_family_point(fam, addr, tail);
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["address"] = to_string(addr);
  o.doc["tail"] = tail ? to_string(*tail) : "";
  o.doc["value"] = rat(v);
  o.doc["decimal"] = num(to_double(v));
  if (fam.kind != FamilyKind::CantorRestrict) o.doc["digits"] = to_string(expand_address(fam, addr));
  return o;
}

Output cmd_cylinder(const FamilySpec& fam, const std::string& addr_text, std::optional<int> child) {
  const CylinderAddress addr = parse_address(addr_text);
  const CylinderReport r = cylinder_report(fam, addr, child);
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["address"] = to_string(addr);
  o.doc["source"] = r.from_lemma ? "lemma" : "attractor-hull";
  o.doc["interval"] = interval_json(r.interval);
  o.doc["interval_decimal"] = json::array({num(to_double(r.interval.lo)), num(to_double(r.interval.hi))});
  o.doc["diameter"] = rat(r.diameter);
  if (r.child) o.doc["child"] = *r.child;
  if (r.child_ratio) o.doc["child_ratio"] = rat(*r.child_ratio);
  o.doc["orientation"] = to_string(r.orientation);
  return o;
}

Output cmd_verify(const FamilySpec& fam, std::size_t depth, std::size_t oracle_depth, std::size_t cap, bool& pass) {
  const VerifyReport rep = verify_family(fam, depth, oracle_depth, cap);
  pass = rep.pass;
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["depth"] = depth;
  o.doc["oracle_depth"] = oracle_depth;
  o.doc["pass"] = rep.pass;
  o.doc["max_oracle_distance"] = rat(rep.max_oracle_distance);
  Table t{"properties", {"property", "status", "checks", "address", "detail", "left", "right"}, {}};
  for (const auto& p : rep.properties) {
    const std::string status = p.skipped ? "SKIP" : (p.pass ? "PASS" : "FAIL");
    if (p.counterexample) {
      const auto& c = *p.counterexample;
      t.rows.push_back({p.name, status, p.checked, to_string(c.address), c.what, rat(c.left), rat(c.right)});
    } else {
      t.rows.push_back({p.name, status, p.checked, "", p.note, "", ""});
    }
  }
  o.table = std::move(t);
  return o;
}

Output cmd_cover(const FamilySpec& fam, std::size_t depth, std::size_t cap) {
  Output o;
  o.doc["family"] = fam.to_string();
  Table t{"sums", {"depth", "cylinders", "sum", "decimal", "ratio"}, {}};
  Rational prev;
  for (std::size_t n = 0; n <= depth; ++n) {
    const Rational sum = covering_sum(fam, n, cap);
    json ratio = nullptr;
    if (n > 0 && prev != 0) ratio = rat(sum / prev);
    t.rows.push_back({n, address_count(fam, n), rat(sum), num(to_double(sum)), ratio});
    prev = sum;
  }
  o.table = std::move(t);
  return o;
}

std::pair<int, int> parse_scales(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw ParseError("expected --scales LO:HI, got '" + text + "'");
  }
}

Output cmd_boxcount(const FamilySpec& fam, const std::string& scales, std::size_t cap) {
  const auto [lo, hi] = parse_scales(scales);
  const auto counts = count_scales(fam, lo, hi, cap);
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["base"] = mesh_base(fam);
  if (counts.size() >= 3) {
    try {
      const FitResult fit = fit_dimension(counts);
      o.doc["slope"] = num(fit.slope);
      o.doc["r2"] = num(fit.r2);
    } catch (const DomainError& e) {
      o.doc["fit"] = e.what();
    }
  }
  try {
    o.doc["alpha"] = num(family_dimension(fam).alpha);
  } catch (const Error&) {
  }
  Table t{"scales", {"n", "epsilon", "count", "depth"}, {}};
  for (std::size_t i = 0; i < counts.size(); ++i)
    t.rows.push_back({lo + static_cast<int>(i), num(counts[i].epsilon), counts[i].count, counts[i].depth});
  o.table = std::move(t);
  return o;
}

Output cmd_enumerate(const FamilySpec& fam, std::size_t depth, std::size_t cap) {
  const auto addrs = enumerate_addresses(fam, depth, cap);
  Output o;
  o.doc["family"] = fam.to_string();
  o.doc["depth"] = depth;
  o.doc["count"] = addrs.size();
  Table t{"addresses", {"address", "digits"}, {}};
  for (const auto& a : addrs) {
    json digits = nullptr;
    if (fam.kind != FamilyKind::CantorRestrict) digits = to_string(expand_address(fam, a));
    t.rows.push_back({to_string(a), digits});
  }
  o.table = std::move(t);
  return o;
}

std::string repr_text(const DigitString& d) {
  std::string out = digits_text(d.digits, d.base);
  if (!d.period.empty()) out += "(" + digits_text(d.period, d.base) + ")";
  return out;
}

Output cmd_convert(const std::string& input, int base, const std::string& from, const std::string& to,
                   std::size_t digits) {
  if (base < 2) throw DomainError("base must be at least 2");
  Rational x;
  if (from == "rational") {
    x = parse_rational(input);
  } else {
    const DigitString d = parse_digits(input, base);
    x = from == "sadic" ? eval_sadic(d) : eval_negasadic(d);
  }
  Output o;
  o.doc["input"] = input;
  o.doc["from"] = from;
  o.doc["to"] = to;
  o.doc["base"] = base;
  o.doc["value"] = rat(x);
  o.doc["decimal"] = num(to_double(x));
  if (to == "rational") return o;
  const bool nega = to == "nega";
  const DigitString d = digits_from_rational(x, base, digits, nega);
  const Rational back = nega ? eval_negasadic(d) : eval_sadic(d);
  o.doc["digits"] = repr_text(d);
  o.doc["prefix_value"] = rat(back);
  o.doc["remainder"] = rat(x - back);
  o.doc["remainder_bound"] = rat(inv_pow(base, digits) * (nega ? make_rational(base, base + 1) : Rational(1)));
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digit-restricted fractal sets: dimensions, cylinders, covers and checks", "moran"};
  app.require_subcommand(1);

  std::string family_text, format = "json", out_path, addr_text, tail_text, scales = "4:10";
  std::size_t depth = 8, cap = kDefaultCap, oracle_depth = 8;
  std::optional<int> child;
  std::string convert_input, from = "rational", to = "sadic";
  int base = 10;
  std::size_t digit_count = 16;

  auto common = [&](CLI::App* sub, bool needs_family) {
    if (needs_family) sub->add_option("family", family_text, "family, e.g. \"Su(s=5,u=2)\"")->required();
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out_path, "write the result to this file");
  };

  auto* dim = app.add_subcommand("dim", "Hausdorff dimension of a family");
  common(dim, true);
  auto* blocks = app.add_subcommand("blocks", "digit blocks and their length histogram");
  common(blocks, true);
  auto* eval = app.add_subcommand("eval", "exact value of the point at an address");
  common(eval, true);
  eval->add_option("--addr", addr_text, "address, e.g. 1,2 (MD: 1@3,2@5)");
  eval->add_option("--tail", tail_text, "address block repeated forever after --addr");
  auto* cyl = app.add_subcommand("cylinder", "cylinder interval, diameter and sibling orientation");
  common(cyl, true);
  cyl->add_option("--addr", addr_text, "address, e.g. 1,2");
  cyl->add_option("--child", child, "report the diameter ratio of this child");
  auto* ver = app.add_subcommand("verify", "check cylinder properties against the extrema oracle");
  common(ver, true);
  ver->add_option("--depth", depth, "largest address rank")->capture_default_str();
  ver->add_option("--oracle-depth", oracle_depth, "continuation length searched by the oracle")->capture_default_str();
  ver->add_option("--cap", cap, "evaluation cap")->capture_default_str();
  auto* cover = app.add_subcommand("cover", "exact covering sums by rank");
  common(cover, true);
  cover->add_option("--depth", depth)->capture_default_str();
  cover->add_option("--cap", cap)->capture_default_str();
  auto* box = app.add_subcommand("boxcount", "box counts at eps = s^-n and the fitted slope");
  common(box, true);
  box->add_option("--scales", scales, "range LO:HI of n")->capture_default_str();
  box->add_option("--cap", cap)->capture_default_str();
  auto* en = app.add_subcommand("enumerate", "admissible addresses of one rank");
  common(en, true);
  en->add_option("--depth", depth)->capture_default_str();
  en->add_option("--cap", cap)->capture_default_str();
  auto* conv = app.add_subcommand("convert", "convert between rationals and (nega-)s-adic digits");
  common(conv, false);
  conv->add_option("value", convert_input, "p/q, decimal, or digits such as 1(02)")->required();
  conv->add_option("--base", base, "s")->required();
  conv->add_option("--from", from)->check(CLI::IsMember({"rational", "sadic", "nega"}))->capture_default_str();
  conv->add_option("--to", to)->check(CLI::IsMember({"rational", "sadic", "nega"}))->capture_default_str();
  conv->add_option("--digits", digit_count, "digits to produce")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  bool pass = true;
  Output result;
  try {
    FamilySpec fam;
    if (!conv->parsed()) fam = parse_family(family_text);
    if (dim->parsed()) result = cmd_dim(fam);
    else if (blocks->parsed()) result = cmd_blocks(fam);
    else if (eval->parsed()) result = cmd_eval(fam, addr_text, tail_text);
    else if (cyl->parsed()) result = cmd_cylinder(fam, addr_text, child);
    else if (ver->parsed()) result = cmd_verify(fam, depth, oracle_depth, cap, pass);
    else if (cover->parsed()) result = cmd_cover(fam, depth, cap);
    else if (box->parsed()) result = cmd_boxcount(fam, scales, cap);
    else if (en->parsed()) result = cmd_enumerate(fam, depth, cap);
    else result = cmd_convert(convert_input, base, from, to, digit_count);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (out_path.empty()) {
    render(result, format, out);
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    render(result, format, f);
  }
  return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace moran::cli
