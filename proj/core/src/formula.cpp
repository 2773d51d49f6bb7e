#include "tcw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace tcw {

namespace {

bool table_in_r(const TernaryFunction& f) {
  const std::uint64_t size = pow3(f.arity());
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    const Value v = f.value_at_index(idx);
    if (v > 1) return false;
    if (v == 1) {
      std::uint64_t rest = idx;
      for (int j = 0; j < f.arity(); ++j) {
        if (rest % 3 == 0) return false;
        rest /= 3;
      }
    }
  }
  return true;
}

}  // namespace

GeneratorSymbol::GeneratorSymbol(std::string name, Semantics semantics)
    : name_(std::move(name)), semantics_(std::move(semantics)) {
  if (name_.empty())
    throw std::invalid_argument("GeneratorSymbol: name must not be empty");
  if (const auto* e = std::get_if<ExcludedLayerFunction>(&semantics_)) {
    arity_ = e->arity;
    known_in_r_ = true;
  } else if (const auto* s = std::get_if<SymmetricRFunction>(&semantics_)) {
    arity_ = s->arity;
    known_in_r_ = true;
  } else {
    const auto& t = std::get<TernaryFunction>(semantics_);
    arity_ = t.arity();
    known_in_r_ = table_in_r(t);
  }
}

Value GeneratorSymbol::eval_values(std::span<const Value> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("GeneratorSymbol::eval_values: arity mismatch");
  if (const auto* e = std::get_if<ExcludedLayerFunction>(&semantics_))
    return e->eval_values(args);
  if (const auto* s = std::get_if<SymmetricRFunction>(&semantics_))
    return s->eval_values(args);
  const auto& t = std::get<TernaryFunction>(semantics_);
  std::uint64_t idx = 0, weight = 1;
  for (Value v : args) {
    idx += v * weight;
    weight *= 3;
  }
  return t.value_at_index(idx);
}

GeneratorPtr make_generator(const ExcludedLayerFunction& f) {
  return std::make_shared<const GeneratorSymbol>(f.name(), f);
}

GeneratorPtr make_generator(const SymmetricRFunction& f) {
  return std::make_shared<const GeneratorSymbol>(f.name(), f);
}

GeneratorPtr make_generator(std::string name, GeneratorSymbol::Semantics sem) {
  return std::make_shared<const GeneratorSymbol>(std::move(name),
                                                 std::move(sem));
}

GeneratorPtr GeneratorSet::add(GeneratorPtr symbol) {
  if (!symbol) throw std::invalid_argument("GeneratorSet::add: null symbol");
  auto it = std::lower_bound(
      by_name_.begin(), by_name_.end(), symbol->name(),
      [](const auto& entry, const std::string& n) { return entry.first < n; });
  if (it != by_name_.end() && it->first == symbol->name()) {
    if (!(*it->second == *symbol))
      throw std::invalid_argument(
          "GeneratorSet::add: name '" + symbol->name() +
          "' already bound to different semantics");
    return it->second;
  }
  it = by_name_.insert(it, {symbol->name(), symbol});
  return it->second;
}

GeneratorPtr GeneratorSet::find(const std::string& name) const {
  auto it = std::lower_bound(
      by_name_.begin(), by_name_.end(), name,
      [](const auto& entry, const std::string& n) { return entry.first < n; });
  if (it != by_name_.end() && it->first == name) return it->second;
  return nullptr;
}

std::vector<GeneratorPtr> GeneratorSet::symbols() const {
  std::vector<GeneratorPtr> out;
  out.reserve(by_name_.size());
  for (const auto& [name, sym] : by_name_) out.push_back(sym);
  return out;
}

FormulaPtr Formula::var(int index_1_based) {
  if (index_1_based < 1)
    throw std::invalid_argument("Formula::var: index must be >= 1");
  auto node = std::shared_ptr<Formula>(new Formula());
  node->var_index_ = index_1_based;
  return node;
}

FormulaPtr Formula::apply(GeneratorPtr symbol, std::vector<FormulaPtr> args) {
  if (!symbol) throw std::invalid_argument("Formula::apply: null symbol");
  if (static_cast<int>(args.size()) != symbol->arity())
    throw std::invalid_argument("Formula::apply: '" + symbol->name() +
                                "' expects " + std::to_string(symbol->arity()) +
                                " arguments, got " +
                                std::to_string(args.size()));
  for (const auto& a : args)
    if (!a) throw std::invalid_argument("Formula::apply: null argument");
  auto node = std::shared_ptr<Formula>(new Formula());
  node->symbol_ = std::move(symbol);
  node->args_ = std::move(args);
  return node;
}

Formula::~Formula() {
  // Deep argument chains (nested i_s witnesses reach depths of tens of
  // thousands) would overflow the stack under recursive shared_ptr release;
  // steal children and drain them iteratively instead.
  if (args_.empty()) return;
  std::vector<FormulaPtr> pending;
  pending.reserve(args_.size());
  for (auto& a : args_) pending.push_back(std::move(a));
  args_.clear();
  while (!pending.empty()) {
    FormulaPtr node = std::move(pending.back());
    pending.pop_back();
    if (node.use_count() == 1 && !node->args_.empty()) {
      auto* sole_owner = const_cast<Formula*>(node.get());
      for (auto& a : sole_owner->args_) pending.push_back(std::move(a));
      sole_owner->args_.clear();
    }
  }
}

VariablePermutation::VariablePermutation(std::vector<int> images_1_based)
    : images_(std::move(images_1_based)) {
  const int n = static_cast<int>(images_.size());
  if (n < 1)
    throw std::invalid_argument("VariablePermutation: size must be >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument(
          "VariablePermutation: images must be a permutation of 1..n");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

VariablePermutation VariablePermutation::identity(int n) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 1);
  return VariablePermutation(std::move(id));
}

std::vector<VariablePermutation> VariablePermutation::all(int n) {
  if (n < 1 || n > 9)
    throw std::invalid_argument(
        "VariablePermutation::all: full enumeration supported for n in 1..9");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<VariablePermutation> out;
  do {
    out.push_back(VariablePermutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

int VariablePermutation::operator()(int i_1_based) const {
  if (i_1_based < 1 || i_1_based > size())
    throw std::out_of_range("VariablePermutation: index out of range");
  return images_[static_cast<std::size_t>(i_1_based - 1)];
}

VariablePermutation VariablePermutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i)
    inv[static_cast<std::size_t>((*this)(i)-1)] = i;
  return VariablePermutation(std::move(inv));
}

VariablePermutation VariablePermutation::compose_after(
    const VariablePermutation& inner) const {
  if (inner.size() != size())
    throw std::invalid_argument("VariablePermutation: size mismatch");
  std::vector<int> images(images_.size());
  for (int i = 1; i <= size(); ++i)
    images[static_cast<std::size_t>(i - 1)] = (*this)(inner(i));
  return VariablePermutation(std::move(images));
}

TernaryTuple VariablePermutation::permuted_components(
    const TernaryTuple& t) const {
  if (t.arity() != size())
    throw std::invalid_argument(
        "VariablePermutation: tuple arity does not match permutation size");
  std::vector<Value> comps(static_cast<std::size_t>(size()));
  for (int i = 1; i <= size(); ++i)
    comps[static_cast<std::size_t>(i - 1)] = t.at((*this)(i));
  return TernaryTuple(std::move(comps));
}

namespace {

/// Iterative postorder walk over distinct nodes. Visit receives each node
/// exactly once, parents after all their children.
template <typename Visit>
void walk_postorder(const Formula* root, Visit&& visit) {
  std::unordered_set<const Formula*> done;
  std::vector<const Formula*> stack{root};
  while (!stack.empty()) {
    const Formula* node = stack.back();
    if (done.contains(node)) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (const auto& a : node->args()) {
      if (!done.contains(a.get())) {
        if (ready) ready = false;
        stack.push_back(a.get());
      }
    }
    if (ready) {
      done.insert(node);
      stack.pop_back();
      visit(node);
    }
  }
}

}  // namespace

Value eval(const FormulaPtr& phi, const TernaryTuple& t) {
  return CompiledFormula(phi).eval(t);
}

int depth(const FormulaPtr& phi) {
  if (!phi) throw std::invalid_argument("depth: null formula");
  std::unordered_map<const Formula*, int> d;
  int result = 0;
  walk_postorder(phi.get(), [&](const Formula* node) {
    int depth_here = 0;
    for (const auto& a : node->args())
      depth_here = std::max(depth_here, d[a.get()] + 1);
    d[node] = depth_here;
    result = depth_here;
  });
  return result;
}

int max_var_index(const FormulaPtr& phi) {
  if (!phi) throw std::invalid_argument("max_var_index: null formula");
  int result = 0;
  walk_postorder(phi.get(), [&](const Formula* node) {
    if (node->is_var()) result = std::max(result, node->var_index());
  });
  return result;
}

std::vector<int> variable_support(const FormulaPtr& phi) {
  if (!phi) throw std::invalid_argument("variable_support: null formula");
  std::unordered_set<int> seen;
  walk_postorder(phi.get(), [&](const Formula* node) {
    if (node->is_var()) seen.insert(node->var_index());
  });
  std::vector<int> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& phi) {
  if (!phi) throw std::invalid_argument("subformulas: null formula");
  // Pre-order over distinct subterms: applications deduplicated by identity,
  // variables by index.
  std::vector<FormulaPtr> out;
  std::unordered_set<const Formula*> seen_nodes;
  std::unordered_set<int> seen_vars;
  std::vector<FormulaPtr> stack{phi};
  while (!stack.empty()) {
    FormulaPtr node = std::move(stack.back());
    stack.pop_back();
    if (node->is_var()) {
      if (!seen_vars.insert(node->var_index()).second) continue;
    } else {
      if (!seen_nodes.insert(node.get()).second) continue;
    }
    for (auto it = node->args().rbegin(); it != node->args().rend(); ++it)
      stack.push_back(*it);
    out.push_back(std::move(node));
  }
  return out;
}

std::vector<GeneratorPtr> generators_of(const FormulaPtr& phi) {
  if (!phi) throw std::invalid_argument("generators_of: null formula");
  std::unordered_map<std::string, GeneratorPtr> by_name;
  walk_postorder(phi.get(), [&](const Formula* node) {
    if (!node->is_var()) by_name.emplace(node->symbol()->name(), node->symbol());
  });
  std::vector<GeneratorPtr> out;
  out.reserve(by_name.size());
  for (auto& [name, sym] : by_name) out.push_back(sym);
  std::sort(out.begin(), out.end(),
            [](const GeneratorPtr& a, const GeneratorPtr& b) {
              return a->name() < b->name();
            });
  return out;
}

namespace {

/// Bottom-up structure-preserving rewrite: leaf() maps variables, rewrap()
/// maps an application given already-rewritten arguments. Nodes whose
/// arguments are unchanged are shared, not copied.
template <typename Leaf, typename Rewrap>
FormulaPtr transform_formula(const FormulaPtr& root, Leaf&& leaf,
                             Rewrap&& rewrap) {
  std::unordered_map<const Formula*, FormulaPtr> done;
  std::vector<FormulaPtr> stack{root};
  while (!stack.empty()) {
    FormulaPtr node = stack.back();
    if (done.contains(node.get())) {
      stack.pop_back();
      continue;
    }
    if (node->is_var()) {
      done[node.get()] = leaf(node);
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (const auto& a : node->args()) {
      if (!done.contains(a.get())) {
        if (ready) ready = false;
        stack.push_back(a);
      }
    }
    if (!ready) continue;
    std::vector<FormulaPtr> new_args;
    new_args.reserve(node->args().size());
    bool changed = false;
    for (const auto& a : node->args()) {
      FormulaPtr na = done[a.get()];
      if (na.get() != a.get()) changed = true;
      new_args.push_back(std::move(na));
    }
    done[node.get()] = rewrap(node, std::move(new_args), changed);
    stack.pop_back();
  }
  return done[root.get()];
}

}  // namespace

FormulaPtr apply_permutation(const FormulaPtr& phi,
                             const VariablePermutation& sigma) {
  if (!phi) throw std::invalid_argument("apply_permutation: null formula");
  if (max_var_index(phi) > sigma.size())
    throw std::invalid_argument(
        "apply_permutation: formula uses a variable beyond the permutation size");
  return transform_formula(
      phi,
      [&](const FormulaPtr& v) { return Formula::var(sigma(v->var_index())); },
      [](const FormulaPtr& node, std::vector<FormulaPtr> args, bool changed) {
        return changed ? Formula::apply(node->symbol(), std::move(args)) : node;
      });
}

FormulaPtr substitute(const FormulaPtr& phi,
                      std::span<const FormulaPtr> args) {
  if (!phi) throw std::invalid_argument("substitute: null formula");
  if (max_var_index(phi) > static_cast<int>(args.size()))
    throw std::invalid_argument(
        "substitute: formula uses a variable with no replacement");
  return transform_formula(
      phi,
      [&](const FormulaPtr& v) {
        return args[static_cast<std::size_t>(v->var_index() - 1)];
      },
      [](const FormulaPtr& node, std::vector<FormulaPtr> new_args,
         bool changed) {
        return changed ? Formula::apply(node->symbol(), std::move(new_args))
                       : node;
      });
}

std::uint64_t tree_size(const FormulaPtr& phi) {
  if (!phi) throw std::invalid_argument("tree_size: null formula");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::unordered_map<const Formula*, std::uint64_t> size;
  std::uint64_t result = 0;
  walk_postorder(phi.get(), [&](const Formula* node) {
    std::uint64_t total = 1;
    for (const auto& a : node->args()) {
      const std::uint64_t s = size[a.get()];
      total = (total > kMax - s) ? kMax : total + s;
    }
    size[node] = total;
    result = total;
  });
  return result;
}

TernaryFunction semantic_function(const FormulaPtr& phi, int arity,
                                  int arity_cap) {
  if (!phi) throw std::invalid_argument("semantic_function: null formula");
  if (arity < 1 || arity > arity_cap)
    throw std::invalid_argument(
        "semantic_function: arity must lie in 1..cap (cap " +
        std::to_string(arity_cap) + ")");
  if (max_var_index(phi) > arity)
    throw std::invalid_argument(
        "semantic_function: formula uses a variable beyond the given arity");
  CompiledFormula compiled(phi);
  CompiledFormula::Scratch scratch;
  const std::uint64_t size = pow3(arity);
  std::vector<Value> table(size);
  std::vector<Value> digits(static_cast<std::size_t>(arity), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    table[idx] = compiled.eval(digits, scratch);
    for (int j = 0; j < arity; ++j) {
      auto& d = digits[static_cast<std::size_t>(j)];
      if (d < 2) {
        ++d;
        break;
      }
      d = 0;
    }
  }
  return TernaryFunction(arity, std::move(table));
}

std::string print_formula(const FormulaPtr& phi, std::uint64_t max_chars) {
  if (!phi) throw std::invalid_argument("print_formula: null formula");
  const std::uint64_t nodes = tree_size(phi);
  // Every node contributes at least two characters; refuse to materialize
  // terms whose flat text cannot fit the limit.
  if (nodes > max_chars / 2) {
    std::string gens;
    for (const auto& g : generators_of(phi)) {
      if (!gens.empty()) gens += ",";
      gens += g->name();
    }
    return "<term with " + std::to_string(nodes) +
           (nodes == std::numeric_limits<std::uint64_t>::max() ? "+" : "") +
           " positions, depth " + std::to_string(depth(phi)) +
           ", generators [" + gens + "]>";
  }

  struct Item {
    const Formula* node;  // nullptr => emit literal
    char literal;
    bool space_before;
  };
  std::string out;
  std::vector<Item> stack{{phi.get(), 0, false}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (!item.node) {
      out += item.literal;
      continue;
    }
    if (item.space_before) out += ' ';
    if (item.node->is_var()) {
      out += 'x';
      out += std::to_string(item.node->var_index());
      continue;
    }
    out += '(';
    out += item.node->symbol()->name();
    stack.push_back({nullptr, ')', false});
    const auto& args = item.node->args();
    for (auto it = args.rbegin(); it != args.rend(); ++it)
      stack.push_back({it->get(), 0, true});
  }
  return out;
}

namespace {

struct Token {
  enum Kind { Open, Close, Atom } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      tokens.push_back({Token::Open, "(", i});
      ++i;
    } else if (c == ')') {
      tokens.push_back({Token::Close, ")", i});
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')')
        ++i;
      tokens.push_back({Token::Atom, std::string(text.substr(start, i - start)),
                        start});
    }
  }
  return tokens;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

/// x<digits> with index >= 1.
bool is_var_token(const std::string& text, int& index) {
  if (text.size() < 2 || text[0] != 'x') return false;
  if (!parse_int(std::string_view(text).substr(1), index)) return false;
  return index >= 1;
}

bool is_name_token(const std::string& text) {
  if (text.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0])) && text[0] != '_')
    return false;
  for (char c : text)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

/// Builds semantics for names of the derived shapes i<s>, s<n>_<e>_<d>,
/// symm<n>[_<e>...]; nullopt when the name does not match any shape.
std::optional<GeneratorSymbol::Semantics> derived_semantics(
    const std::string& name) {
  if (name.size() >= 2 && name[0] == 'i') {
    int s = 0;
    if (parse_int(std::string_view(name).substr(1), s) && s >= 1)
      return GeneratorSymbol::Semantics(SymmetricRFunction::all_of(s));
  }
  if (name.size() >= 2 && name[0] == 's' && name.rfind("symm", 0) != 0) {
    std::string_view rest = std::string_view(name).substr(1);
    const auto p1 = rest.find('_');
    if (p1 == std::string_view::npos) return std::nullopt;
    const auto p2 = rest.find('_', p1 + 1);
    if (p2 == std::string_view::npos) return std::nullopt;
    int n = 0, e = 0, d = 0;
    if (parse_int(rest.substr(0, p1), n) &&
        parse_int(rest.substr(p1 + 1, p2 - p1 - 1), e) &&
        parse_int(rest.substr(p2 + 1), d) && n >= 1 && e >= 0 && d >= 0 &&
        e + d == n)
      return GeneratorSymbol::Semantics(ExcludedLayerFunction(n, e, d));
  }
  if (name.rfind("symm", 0) == 0) {
    std::string_view rest = std::string_view(name).substr(4);
    auto p1 = rest.find('_');
    int n = 0;
    std::vector<int> ones;
    std::string_view head =
        p1 == std::string_view::npos ? rest : rest.substr(0, p1);
    if (!parse_int(head, n) || n < 1) return std::nullopt;
    while (p1 != std::string_view::npos) {
      const auto p2 = rest.find('_', p1 + 1);
      int e = 0;
      std::string_view piece =
          p2 == std::string_view::npos ? rest.substr(p1 + 1)
                                       : rest.substr(p1 + 1, p2 - p1 - 1);
      if (!parse_int(piece, e) || e < 0 || e > n) return std::nullopt;
      ones.push_back(e);
      p1 = p2;
    }
    return GeneratorSymbol::Semantics(SymmetricRFunction(n, std::move(ones)));
  }
  return std::nullopt;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, GeneratorSet& env,
                         bool auto_intern) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) throw ParseError(0, "empty input");

  struct Frame {
    GeneratorPtr symbol;
    std::vector<FormulaPtr> args;
    std::size_t open_pos;
  };
  std::vector<Frame> frames;
  FormulaPtr result;

  auto attach = [&](FormulaPtr term, std::size_t pos) {
    if (!frames.empty()) {
      frames.back().args.push_back(std::move(term));
    } else if (!result) {
      result = std::move(term);
    } else {
      throw ParseError(pos, "unexpected trailing term");
    }
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& tok = tokens[i];
    if (tok.kind == Token::Open) {
      if (result) throw ParseError(tok.pos, "unexpected trailing term");
      if (i + 1 >= tokens.size() || tokens[i + 1].kind != Token::Atom)
        throw ParseError(tok.pos, "expected generator name after '('");
      const Token& name_tok = tokens[i + 1];
      int var_index = 0;
      if (is_var_token(name_tok.text, var_index))
        throw ParseError(name_tok.pos,
                         "a variable cannot be applied to arguments");
      if (!is_name_token(name_tok.text))
        throw ParseError(name_tok.pos,
                         "invalid generator name '" + name_tok.text + "'");
      GeneratorPtr sym = env.find(name_tok.text);
      if (!sym && auto_intern) {
        if (auto sem = derived_semantics(name_tok.text))
          sym = env.add(make_generator(name_tok.text, std::move(*sem)));
      }
      if (!sym)
        throw ParseError(name_tok.pos,
                         "unknown generator '" + name_tok.text + "'");
      frames.push_back({std::move(sym), {}, tok.pos});
      i += 2;
    } else if (tok.kind == Token::Close) {
      if (frames.empty()) throw ParseError(tok.pos, "unbalanced ')'");
      Frame frame = std::move(frames.back());
      frames.pop_back();
      if (frame.args.empty())
        throw ParseError(tok.pos, "application of '" + frame.symbol->name() +
                                      "' needs at least one argument");
      if (static_cast<int>(frame.args.size()) != frame.symbol->arity())
        throw ParseError(
            tok.pos, "'" + frame.symbol->name() + "' expects " +
                         std::to_string(frame.symbol->arity()) +
                         " arguments, got " + std::to_string(frame.args.size()));
      attach(Formula::apply(std::move(frame.symbol), std::move(frame.args)),
             tok.pos);
      ++i;
    } else {
      if (result) throw ParseError(tok.pos, "unexpected trailing term");
      int var_index = 0;
      if (!is_var_token(tok.text, var_index))
        throw ParseError(tok.pos, "expected a variable like x1, got '" +
                                      tok.text + "'");
      attach(Formula::var(var_index), tok.pos);
      ++i;
    }
  }
  if (!frames.empty())
    throw ParseError(frames.back().open_pos, "unclosed '('");
  if (!result) throw ParseError(text.size(), "expected a term");
  return result;
}

CompiledFormula::CompiledFormula(const FormulaPtr& root) : root_(root) {
  if (!root) throw std::invalid_argument("CompiledFormula: null formula");
  std::unordered_map<const Formula*, std::uint32_t> slot;
  walk_postorder(root.get(), [&](const Formula* node) {
    Op op{};
    if (node->is_var()) {
      op.kind = OpKind::Var;
      op.var_index = node->var_index();
      min_point_arity_ = std::max(min_point_arity_, node->var_index());
    } else {
      const auto& sem = node->symbol()->semantics();
      if (const auto* e = std::get_if<ExcludedLayerFunction>(&sem)) {
        op.kind = OpKind::Excluded;
        op.excluded_ones = e->excluded.ones;
      } else if (const auto* s = std::get_if<SymmetricRFunction>(&sem)) {
        op.kind = OpKind::Symmetric;
        op.symm = s;
      } else {
        op.kind = OpKind::Table;
        op.table = &std::get<TernaryFunction>(sem);
      }
      op.args_begin = static_cast<std::uint32_t>(child_slots_.size());
      for (const auto& a : node->args())
        child_slots_.push_back(slot.at(a.get()));
      op.args_end = static_cast<std::uint32_t>(child_slots_.size());
    }
    slot[node] = static_cast<std::uint32_t>(ops_.size());
    ops_.push_back(op);
  });
  slot_of_.assign(slot.begin(), slot.end());
  std::sort(slot_of_.begin(), slot_of_.end());
}

const std::vector<Value>& CompiledFormula::eval_all(std::span<const Value> point,
                                                    Scratch& scratch) const {
  if (static_cast<int>(point.size()) < min_point_arity_)
    throw std::invalid_argument(
        "CompiledFormula::eval: point shorter than the largest variable index");
  for (Value v : point)
    if (v > 2)
      throw std::invalid_argument("CompiledFormula::eval: values must be 0..2");
  auto& values = scratch.values;
  values.resize(ops_.size());
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const Op& op = ops_[k];
    switch (op.kind) {
      case OpKind::Var:
        values[k] = point[static_cast<std::size_t>(op.var_index - 1)];
        break;
      case OpKind::Excluded: {
        int ones = 0;
        Value out = 1;
        for (std::uint32_t s = op.args_begin; s < op.args_end; ++s) {
          const Value v = values[child_slots_[s]];
          if (v == 0) {
            out = 0;
            break;
          }
          ones += (v == 1);
        }
        values[k] = (out == 0 || ones == op.excluded_ones) ? Value{0} : Value{1};
        break;
      }
      case OpKind::Symmetric: {
        int ones = 0;
        bool zero = false;
        for (std::uint32_t s = op.args_begin; s < op.args_end; ++s) {
          const Value v = values[child_slots_[s]];
          if (v == 0) {
            zero = true;
            break;
          }
          ones += (v == 1);
        }
        values[k] = (!zero && std::binary_search(op.symm->one_layers.begin(),
                                                 op.symm->one_layers.end(), ones))
                        ? Value{1}
                        : Value{0};
        break;
      }
      case OpKind::Table: {
        std::uint64_t idx = 0, weight = 1;
        for (std::uint32_t s = op.args_begin; s < op.args_end; ++s) {
          idx += values[child_slots_[s]] * weight;
          weight *= 3;
        }
        values[k] = op.table->value_at_index(idx);
        break;
      }
    }
  }
  return values;
}

Value CompiledFormula::eval(std::span<const Value> point,
                            Scratch& scratch) const {
  return eval_all(point, scratch).back();
}

Value CompiledFormula::eval(std::span<const Value> point) const {
  Scratch scratch;
  return eval(point, scratch);
}

Value CompiledFormula::eval(const TernaryTuple& t) const {
  Scratch scratch;
  return eval(t.components(), scratch);
}

Value CompiledFormula::value_of(const FormulaPtr& node,
                                const Scratch& scratch) const {
  auto it = std::lower_bound(
      slot_of_.begin(), slot_of_.end(),
      std::make_pair(static_cast<const Formula*>(node.get()), std::uint32_t{0}),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == slot_of_.end() || it->first != node.get())
    throw std::invalid_argument(
        "CompiledFormula::value_of: node is not part of this formula");
  return scratch.values.at(it->second);
}

}  // namespace tcw
