#include "tcw/textio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

namespace tcw {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

int to_int(std::string_view s, const std::string& key) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail("descriptor field '" + key + "': expected an integer, got '" +
         std::string(s) + "'");
  return v;
}

/// key=value fields after the form tag; duplicate keys rejected.
std::map<std::string, std::string> parse_fields(
    const std::vector<std::string>& tokens, std::size_t first) {
  std::map<std::string, std::string> fields;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      fail("expected key=value field, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (!fields.emplace(key, tok.substr(eq + 1)).second)
      fail("duplicate field '" + key + "'");
  }
  return fields;
}

std::string take_field(std::map<std::string, std::string>& fields,
                       const std::string& key) {
  auto it = fields.find(key);
  if (it == fields.end()) fail("missing field '" + key + "'");
  std::string value = std::move(it->second);
  fields.erase(it);
  return value;
}

void reject_leftovers(const std::map<std::string, std::string>& fields,
                      const std::string& form) {
  if (!fields.empty())
    fail("unknown field '" + fields.begin()->first + "' in " + form +
         " descriptor");
}

std::vector<int> parse_int_list(std::string_view s, const std::string& key) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const std::string_view piece = comma == std::string_view::npos
                                       ? s.substr(start)
                                       : s.substr(start, comma - start);
    out.push_back(to_int(piece, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

GeneratorSymbol::Semantics parse_function_text(std::string_view text) {
  const auto tokens = split_ws(text);
  if (tokens.empty()) fail("empty function descriptor");
  const std::string& form = tokens[0];
  auto fields = parse_fields(tokens, 1);

  if (form == "sminus1") {
    const int n = to_int(take_field(fields, "n"), "n");
    const int e = to_int(take_field(fields, "e"), "e");
    const int d = to_int(take_field(fields, "d"), "d");
    reject_leftovers(fields, form);
    if (e + d != n)
      fail("sminus1 descriptor: e + d must equal n (got e=" +
           std::to_string(e) + " d=" + std::to_string(d) + " n=" +
           std::to_string(n) + ")");
    return ExcludedLayerFunction(n, e, d);
  }
  if (form == "symm") {
    const int n = to_int(take_field(fields, "n"), "n");
    std::vector<int> ones = parse_int_list(take_field(fields, "ones"), "ones");
    reject_leftovers(fields, form);
    return SymmetricRFunction(n, std::move(ones));
  }
  if (form == "table") {
    const int n = to_int(take_field(fields, "n"), "n");
    const std::string vals = take_field(fields, "vals");
    reject_leftovers(fields, form);
    if (n < 1) fail("table descriptor: n must be >= 1");
    const std::uint64_t expected = pow3(n);
    if (vals.size() != expected)
      fail("table descriptor: vals must have 3^n = " +
           std::to_string(expected) + " digits, got " +
           std::to_string(vals.size()));
    std::vector<Value> table;
    table.reserve(vals.size());
    for (char c : vals) {
      if (c < '0' || c > '2')
        fail(std::string("table descriptor: vals digits must be 0, 1 or 2; "
                         "got '") +
             c + "'");
      table.push_back(static_cast<Value>(c - '0'));
    }
    return TernaryFunction(n, std::move(table));
  }
  fail("unknown function descriptor form '" + form +
       "' (expected sminus1, symm or table)");
}

std::string function_text(const GeneratorSymbol::Semantics& f) {
  if (const auto* e = std::get_if<ExcludedLayerFunction>(&f)) {
    return "sminus1 n=" + std::to_string(e->arity) +
           " e=" + std::to_string(e->e()) + " d=" + std::to_string(e->d());
  }
  if (const auto* s = std::get_if<SymmetricRFunction>(&f)) {
    std::string ones;
    for (int v : s->one_layers) {
      if (!ones.empty()) ones += ',';
      ones += std::to_string(v);
    }
    return "symm n=" + std::to_string(s->arity) + " ones=" + ones;
  }
  const auto& t = std::get<TernaryFunction>(f);
  std::string vals;
  vals.reserve(t.table().size());
  for (Value v : t.table()) vals += static_cast<char>('0' + v);
  return "table n=" + std::to_string(t.arity()) + " vals=" + vals;
}

FamilySpec FamilySpec::fixed_e(int e, int arity_start, int arity_step) {
  if (e < 0) fail("family fixed_e: the 1-count must be >= 0");
  if (arity_start < 0) arity_start = std::max(4, e + 1);
  if (arity_start <= e)
    fail("family fixed_e: start arity must exceed the fixed 1-count");
  if (arity_step < 1) fail("family: step must be >= 1");
  FamilySpec spec;
  spec.kind = Kind::FixedE;
  spec.param = e;
  spec.arity_start = arity_start;
  spec.arity_step = arity_step;
  return spec;
}

FamilySpec FamilySpec::fixed_d(int d, int arity_start, int arity_step) {
  if (d < 0) fail("family fixed_d: the 2-count must be >= 0");
  if (arity_start < 0) arity_start = std::max(4, d + 1);
  if (arity_start <= d)
    fail("family fixed_d: start arity must exceed the fixed 2-count");
  if (arity_step < 1) fail("family: step must be >= 1");
  FamilySpec spec;
  spec.kind = Kind::FixedD;
  spec.param = d;
  spec.arity_start = arity_start;
  spec.arity_step = arity_step;
  return spec;
}

FamilySpec FamilySpec::list(std::vector<Layer> members) {
  if (members.empty()) fail("family list: needs at least one member");
  for (const Layer& m : members) {
    if (m.ones < 0 || m.twos < 0 || m.arity() < 1)
      fail("family list: each member needs ones >= 0, twos >= 0, arity >= 1");
  }
  FamilySpec spec;
  spec.kind = Kind::List;
  spec.members = std::move(members);
  return spec;
}

ExcludedLayerFunction FamilySpec::member(int index) const {
  if (index < 0) throw std::out_of_range("FamilySpec::member: negative index");
  switch (kind) {
    case Kind::FixedE: {
      const int n = arity_start + index * arity_step;
      return ExcludedLayerFunction(n, param, n - param);
    }
    case Kind::FixedD: {
      const int n = arity_start + index * arity_step;
      return ExcludedLayerFunction(n, n - param, param);
    }
    case Kind::List:
      if (index >= static_cast<int>(members.size()))
        throw std::out_of_range("FamilySpec::member: index past end of list");
      const Layer& m = members[static_cast<std::size_t>(index)];
      return ExcludedLayerFunction(m.arity(), m.ones, m.twos);
  }
  throw std::logic_error("FamilySpec::member: unreachable");
}

FamilySpec parse_family_text(std::string_view text) {
  const auto tokens = split_ws(text);
  if (tokens.empty() || tokens[0] != "family")
    fail("family descriptor must start with 'family'");
  auto fields = parse_fields(tokens, 1);

  const bool has_e = fields.contains("fixed_e");
  const bool has_d = fields.contains("fixed_d");
  const bool has_list = fields.contains("list");
  if (has_e + has_d + has_list != 1)
    fail("family descriptor needs exactly one of fixed_e=, fixed_d=, list=");

  if (has_list) {
    const std::string value = take_field(fields, "list");
    reject_leftovers(fields, "family");
    std::vector<Layer> members;
    std::size_t start = 0;
    while (start < value.size()) {
      auto semi = value.find(';', start);
      const std::string_view piece =
          semi == std::string::npos
              ? std::string_view(value).substr(start)
              : std::string_view(value).substr(start, semi - start);
      if (piece.size() < 5 || piece.front() != '(' || piece.back() != ')')
        fail("family list: expected (ones,twos) pair, got '" +
             std::string(piece) + "'");
      const std::string_view inner = piece.substr(1, piece.size() - 2);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos)
        fail("family list: expected (ones,twos) pair, got '" +
             std::string(piece) + "'");
      members.push_back(Layer{to_int(inner.substr(0, comma), "list"),
                              to_int(inner.substr(comma + 1), "list")});
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    return FamilySpec::list(std::move(members));
  }

  const std::string key = has_e ? "fixed_e" : "fixed_d";
  const int param = to_int(take_field(fields, key), key);
  int start = -1, step = 1;
  if (fields.contains("start")) start = to_int(take_field(fields, "start"), "start");
  if (fields.contains("step")) step = to_int(take_field(fields, "step"), "step");
  reject_leftovers(fields, "family");
  return has_e ? FamilySpec::fixed_e(param, start, step)
               : FamilySpec::fixed_d(param, start, step);
}

std::string family_text(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::FixedE:
      return "family fixed_e=" + std::to_string(spec.param) +
             " start=" + std::to_string(spec.arity_start) +
             " step=" + std::to_string(spec.arity_step);
    case FamilySpec::Kind::FixedD:
      return "family fixed_d=" + std::to_string(spec.param) +
             " start=" + std::to_string(spec.arity_start) +
             " step=" + std::to_string(spec.arity_step);
    case FamilySpec::Kind::List: {
      std::string out = "family list=";
      for (std::size_t i = 0; i < spec.members.size(); ++i) {
        if (i) out += ';';
        out += '(' + std::to_string(spec.members[i].ones) + ',' +
               std::to_string(spec.members[i].twos) + ')';
      }
      return out;
    }
  }
  throw std::logic_error("family_text: unreachable");
}

}  // namespace tcw
