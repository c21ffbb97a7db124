#include "alterweight/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

namespace alterweight {

namespace {

bool valid_symbol_name(const std::string& s) {
  if (s.empty()) return false;
  return s.find_first_of("(), \t\n") == std::string::npos;
}

}  // namespace

TreePtr Tree::symbol(std::string label, std::vector<TreePtr> children) {
  if (!valid_symbol_name(label)) throw domain_error("bad symbol name '" + label + "'");
  for (const TreePtr& c : children)
    if (!c) throw domain_error("null child under symbol '" + label + "'");
  auto t = std::shared_ptr<Tree>(new Tree());
  t->label_ = std::move(label);
  t->children_ = std::move(children);
  return t;
}

TreePtr Tree::var(int index) {
  if (index < 1) throw domain_error("variable index must be at least 1");
  auto t = std::shared_ptr<Tree>(new Tree());
  t->var_ = index;
  t->label_ = "x" + std::to_string(index);
  return t;
}

bool tree_eq(const TreePtr& a, const TreePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->is_var() != b->is_var()) return false;
  if (a->is_var()) return a->var_index() == b->var_index();
  if (a->label() != b->label()) return false;
  if (a->children().size() != b->children().size()) return false;
  for (size_t i = 0; i < a->children().size(); ++i)
    if (!tree_eq(a->children()[i], b->children()[i])) return false;
  return true;
}

std::string tree_to_string(const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  if (t->is_var()) return t->label();
  if (t->children().empty()) return t->label();
  std::string out = t->label() + "(";
  for (size_t i = 0; i < t->children().size(); ++i) {
    if (i) out += ",";
    out += tree_to_string(t->children()[i]);
  }
  return out + ")";
}

namespace {

struct TreeParser {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string name() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && text.find_first_of("(), \t\n", pos) != pos) ++pos;
    if (pos == start) throw parse_error("expected a symbol at offset " +
                                        std::to_string(pos) + " in '" + text + "'");
    return text.substr(start, pos - start);
  }

  TreePtr node() {
    std::string label = name();
    skip_ws();
    std::vector<TreePtr> children;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
      } else {
        while (true) {
          children.push_back(node());
          skip_ws();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          }
          throw parse_error("expected ',' or ')' at offset " + std::to_string(pos) +
                            " in '" + text + "'");
        }
      }
    }
    if (label.size() > 1 && label[0] == 'x' &&
        std::all_of(label.begin() + 1, label.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      if (!children.empty())
        throw parse_error("variable " + label + " cannot have children");
      return Tree::var(std::stoi(label.substr(1)));
    }
    return Tree::symbol(label, std::move(children));
  }
};

}  // namespace

TreePtr parse_tree(const std::string& text) {
  TreeParser p{text};
  TreePtr t = p.node();
  p.skip_ws();
  if (p.pos != text.size())
    throw parse_error("trailing input at offset " + std::to_string(p.pos) +
                      " in '" + text + "'");
  return t;
}

std::vector<int> parse_position(const std::string& pos) {
  std::vector<int> path;
  if (pos.empty()) return path;
  size_t start = 0;
  while (start <= pos.size()) {
    size_t dot = pos.find('.', start);
    std::string part = pos.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw parse_error("bad position '" + pos + "'");
    path.push_back(std::stoi(part));
    if (path.back() < 1) throw parse_error("bad position '" + pos + "'");
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return path;
}

namespace {

void collect_positions(const TreePtr& t, std::string& prefix,
                       std::vector<std::string>& out) {
  out.push_back(prefix);
  for (size_t i = 0; i < t->children().size(); ++i) {
    size_t saved = prefix.size();
    if (!prefix.empty()) prefix += ".";
    prefix += std::to_string(i + 1);
    collect_positions(t->children()[i], prefix, out);
    prefix.resize(saved);
  }
}

const TreePtr& walk(const TreePtr& t, const std::vector<int>& path,
                    const std::string& pos) {
  const TreePtr* cur = &t;
  for (int step : path) {
    if (step > static_cast<int>((*cur)->children().size()))
      throw domain_error("position '" + pos + "' not in the tree");
    cur = &(*cur)->children()[step - 1];
  }
  return *cur;
}

}  // namespace

// DFS preorder is exactly lexicographic order on positions.
std::vector<std::string> positions(const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  std::vector<std::string> out;
  std::string prefix;
  collect_positions(t, prefix, out);
  return out;
}

std::string label_at(const TreePtr& t, const std::string& pos) {
  return walk(t, parse_position(pos), pos)->label();
}

TreePtr subtree_at(const TreePtr& t, const std::string& pos) {
  return walk(t, parse_position(pos), pos);
}

namespace {

TreePtr substitute_path(const TreePtr& t, const std::vector<int>& path, size_t at,
                        const TreePtr& replacement, const std::string& pos) {
  if (at == path.size()) return replacement;
  int step = path[at];
  if (step > static_cast<int>(t->children().size()))
    throw domain_error("position '" + pos + "' not in the tree");
  std::vector<TreePtr> kids = t->children();
  kids[step - 1] = substitute_path(kids[step - 1], path, at + 1, replacement, pos);
  return Tree::symbol(t->label(), std::move(kids));
}

}  // namespace

TreePtr substitute_at(const TreePtr& t, const std::string& pos,
                      const TreePtr& replacement) {
  if (!t || !replacement) throw domain_error("null tree");
  std::vector<int> path = parse_position(pos);
  if (!path.empty() && t->is_var())
    throw domain_error("position '" + pos + "' not in the tree");
  return substitute_path(t, path, 0, replacement, pos);
}

TreePtr substitute_many(const TreePtr& t, const std::vector<std::string>& posns,
                        const std::vector<TreePtr>& replacements) {
  if (posns.size() != replacements.size())
    throw domain_error("substitute_many: position and replacement counts differ");
  std::vector<size_t> order(posns.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::vector<int>> paths;
  paths.reserve(posns.size());
  for (const std::string& p : posns) paths.push_back(parse_position(p));
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return paths[a] < paths[b]; });
  for (size_t i = 1; i < order.size(); ++i)
    if (paths[order[i - 1]] == paths[order[i]])
      throw domain_error("substitute_many: duplicate position '" +
                         posns[order[i]] + "'");
  // Lexicographically last position first, so m_1 is substituted last.
  TreePtr result = t;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    result = substitute_at(result, posns[*it], replacements[*it]);
  return result;
}

TreePtr substitute_vars(const TreePtr& t, const std::vector<TreePtr>& replacements) {
  if (!t) throw domain_error("null tree");
  if (t->is_var()) {
    int i = t->var_index();
    if (i > static_cast<int>(replacements.size()))
      throw domain_error("no replacement for variable x" + std::to_string(i));
    return replacements[i - 1];
  }
  std::vector<TreePtr> kids;
  kids.reserve(t->children().size());
  bool changed = false;
  for (const TreePtr& c : t->children()) {
    kids.push_back(substitute_vars(c, replacements));
    changed = changed || kids.back().get() != c.get();
  }
  if (!changed) return t;
  return Tree::symbol(t->label(), std::move(kids));
}

int max_var(const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  if (t->is_var()) return t->var_index();
  int m = 0;
  for (const TreePtr& c : t->children()) m = std::max(m, max_var(c));
  return m;
}

namespace {

// Shared subtrees make naive walks exponential; memoize on node identity.
long long size_impl(const Tree* t, std::unordered_map<const Tree*, long long>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  long long n = 1;
  for (const TreePtr& c : t->children()) n += size_impl(c.get(), memo);
  memo.emplace(t, n);
  return n;
}

int depth_impl(const Tree* t, std::unordered_map<const Tree*, int>& memo) {
  auto hit = memo.find(t);
  if (hit != memo.end()) return hit->second;
  int d = 0;
  for (const TreePtr& c : t->children()) d = std::max(d, 1 + depth_impl(c.get(), memo));
  memo.emplace(t, d);
  return d;
}

}  // namespace

long long tree_size(const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  std::unordered_map<const Tree*, long long> memo;
  return size_impl(t.get(), memo);
}

int tree_depth(const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  std::unordered_map<const Tree*, int> memo;
  return depth_impl(t.get(), memo);
}

bool RankedAlphabet::contains(const std::string& name) const {
  return std::any_of(symbols.begin(), symbols.end(),
                     [&](const auto& s) { return s.first == name; });
}

int RankedAlphabet::rank(const std::string& name) const {
  for (const auto& [sym, r] : symbols)
    if (sym == name) return r;
  throw domain_error("symbol '" + name + "' not in the alphabet");
}

int RankedAlphabet::index(const std::string& name) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].first == name) return static_cast<int>(i);
  throw domain_error("symbol '" + name + "' not in the alphabet");
}

int RankedAlphabet::max_rank() const {
  int m = 0;
  for (const auto& [sym, r] : symbols) m = std::max(m, r);
  return m;
}

RankedAlphabet RankedAlphabet::from_strings(const std::vector<std::string>& decls) {
  RankedAlphabet a;
  for (const std::string& d : decls) {
    auto slash = d.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == d.size())
      throw parse_error("bad symbol declaration '" + d + "', expected name/rank");
    std::string name = d.substr(0, slash);
    std::string rank_part = d.substr(slash + 1);
    if (!valid_symbol_name(name))
      throw parse_error("bad symbol name '" + name + "'");
    if (!std::all_of(rank_part.begin(), rank_part.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      throw parse_error("bad rank in declaration '" + d + "'");
    if (a.contains(name)) throw parse_error("duplicate symbol '" + name + "'");
    a.symbols.emplace_back(name, std::stoi(rank_part));
  }
  return a;
}

std::vector<std::string> RankedAlphabet::to_strings() const {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (const auto& [name, r] : symbols) out.push_back(name + "/" + std::to_string(r));
  return out;
}

void check_tree(const RankedAlphabet& alphabet, const TreePtr& t, bool allow_vars) {
  if (!t) throw domain_error("null tree");
  if (t->is_var()) {
    if (!allow_vars)
      throw domain_error("variable " + t->label() + " in a ground tree");
    return;
  }
  int r = alphabet.rank(t->label());
  if (r != static_cast<int>(t->children().size()))
    throw domain_error("symbol '" + t->label() + "' has rank " + std::to_string(r) +
                       " but " + std::to_string(t->children().size()) + " children");
  for (const TreePtr& c : t->children()) check_tree(alphabet, c, allow_vars);
}

namespace {

void count_vars(const TreePtr& t, std::vector<int>& counts) {
  if (t->is_var()) {
    if (t->var_index() <= static_cast<int>(counts.size())) ++counts[t->var_index() - 1];
    return;
  }
  for (const TreePtr& c : t->children()) count_vars(c, counts);
}

bool has_symbol(const TreePtr& t) {
  if (!t->is_var()) return true;
  return false;
}

}  // namespace

TreeHom TreeHom::make(RankedAlphabet source, RankedAlphabet target,
                      std::map<std::string, TreePtr> patterns) {
  TreeHom h;
  h.source = std::move(source);
  h.target = std::move(target);
  h.patterns = std::move(patterns);
  h.linear = true;
  h.non_deleting = true;
  for (const auto& [name, r] : h.source.symbols) {
    auto it = h.patterns.find(name);
    if (it == h.patterns.end())
      throw domain_error("homomorphism has no pattern for symbol '" + name + "'");
    const TreePtr& pat = it->second;
    check_tree(h.target, pat, true);
    if (max_var(pat) > r)
      throw domain_error("pattern for '" + name + "' uses a variable beyond x" +
                         std::to_string(r));
    std::vector<int> counts(r, 0);
    count_vars(pat, counts);
    for (int c : counts) {
      if (c > 1) h.linear = false;
      if (c == 0) h.non_deleting = false;
    }
    if (!has_symbol(pat)) h.non_deleting = false;
  }
  for (const auto& [name, pat] : h.patterns)
    if (!h.source.contains(name))
      throw domain_error("pattern for '" + name + "' which is not a source symbol");
  return h;
}

namespace {

TreePtr apply_hom_impl(const TreeHom& h, const TreePtr& t, bool allow_vars,
                       std::unordered_map<const Tree*, TreePtr>& memo) {
  if (t->is_var()) {
    if (!allow_vars) throw domain_error("cannot apply a homomorphism to variable " + t->label());
    return t;
  }
  auto hit = memo.find(t.get());
  if (hit != memo.end()) return hit->second;
  auto pat = h.patterns.find(t->label());
  if (pat == h.patterns.end())
    throw domain_error("symbol '" + t->label() + "' not in the homomorphism domain");
  std::vector<TreePtr> images;
  images.reserve(t->children().size());
  for (const TreePtr& c : t->children())
    images.push_back(apply_hom_impl(h, c, allow_vars, memo));
  TreePtr result = substitute_vars(pat->second, images);
  memo.emplace(t.get(), result);
  return result;
}

}  // namespace

TreePtr apply_hom(const TreeHom& h, const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  std::unordered_map<const Tree*, TreePtr> memo;
  return apply_hom_impl(h, t, false, memo);
}

TreePtr apply_hom_pattern(const TreeHom& h, const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  std::unordered_map<const Tree*, TreePtr> memo;
  return apply_hom_impl(h, t, true, memo);
}

TreeHom compose_homs(const TreeHom& h1, const TreeHom& h2) {
  std::map<std::string, TreePtr> patterns;
  for (const auto& [name, pat] : h1.patterns)
    patterns.emplace(name, apply_hom_pattern(h2, pat));
  return TreeHom::make(h1.source, h2.target, std::move(patterns));
}

namespace {

// Syntactic match of a pattern against a ground tree; at most one
// assignment exists, with repeated variables forced to equal subtrees.
bool match_pattern(const TreePtr& pattern, const TreePtr& t,
                   std::map<int, TreePtr>& binding) {
  if (pattern->is_var()) {
    auto [it, fresh] = binding.emplace(pattern->var_index(), t);
    return fresh || tree_eq(it->second, t);
  }
  if (t->is_var()) return false;
  if (pattern->label() != t->label()) return false;
  if (pattern->children().size() != t->children().size()) return false;
  for (size_t i = 0; i < pattern->children().size(); ++i)
    if (!match_pattern(pattern->children()[i], t->children()[i], binding)) return false;
  return true;
}

struct PreimageSearch {
  const TreeHom& h;
  std::unordered_map<const Tree*, std::vector<TreePtr>> memo;

  const std::vector<TreePtr>& run(const TreePtr& t) {
    auto hit = memo.find(t.get());
    if (hit != memo.end()) return hit->second;
    std::vector<TreePtr> result;
    for (const auto& [name, rank] : h.source.symbols) {
      std::map<int, TreePtr> binding;
      if (!match_pattern(h.patterns.at(name), t, binding)) continue;
      // Non-deleting: every x_1..x_rank is bound.
      std::vector<const std::vector<TreePtr>*> child_sets(rank);
      bool dead = false;
      for (int i = 1; i <= rank; ++i) {
        child_sets[i - 1] = &run(binding.at(i));
        if (child_sets[i - 1]->empty()) dead = true;
      }
      if (dead) continue;
      std::vector<size_t> pick(rank, 0);
      while (true) {
        std::vector<TreePtr> kids(rank);
        for (int i = 0; i < rank; ++i) kids[i] = (*child_sets[i])[pick[i]];
        result.push_back(Tree::symbol(name, std::move(kids)));
        int j = rank - 1;
        while (j >= 0 && pick[j] + 1 == child_sets[j]->size()) pick[j--] = 0;
        if (j < 0) break;
        ++pick[j];
      }
    }
    return memo.emplace(t.get(), std::move(result)).first->second;
  }
};

}  // namespace

std::vector<TreePtr> hom_preimages(const TreeHom& h, const TreePtr& t) {
  if (!t) throw domain_error("null tree");
  if (!h.non_deleting)
    throw domain_error("preimage enumeration requires a non-deleting homomorphism");
  check_tree(h.target, t, false);
  PreimageSearch search{h};
  return search.run(t);
}

RankedAlphabet word_alphabet(const std::vector<std::string>& letters) {
  RankedAlphabet a;
  for (const std::string& l : letters) {
    if (l == kLeaf || !valid_symbol_name(l))
      throw domain_error("bad letter '" + l + "'");
    if (a.contains(l)) throw domain_error("duplicate letter '" + l + "'");
    a.symbols.emplace_back(l, 1);
  }
  a.symbols.emplace_back(kLeaf, 0);
  return a;
}

RankedAlphabet lifted_alphabet(const std::vector<std::string>& letters, int rank) {
  if (rank < 1) throw domain_error("rank must be at least 1");
  RankedAlphabet a = word_alphabet(letters);
  for (auto& [name, r] : a.symbols)
    if (name != kLeaf) r = rank;
  return a;
}

TreePtr word_tree(const std::vector<std::string>& word) {
  TreePtr t = Tree::symbol(kLeaf);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    t = Tree::symbol(*it, {t});
  return t;
}

std::vector<std::string> tree_to_word(const TreePtr& t) {
  std::vector<std::string> word;
  const Tree* cur = t.get();
  if (!cur) throw domain_error("null tree");
  while (!(cur->label() == kLeaf && cur->children().empty())) {
    if (cur->is_var() || cur->children().size() != 1)
      throw domain_error("tree is not a word tree");
    word.push_back(cur->label());
    cur = cur->children()[0].get();
  }
  return word;
}

TreePtr generic_tree(const std::vector<std::string>& word, int rank) {
  if (rank < 1) throw domain_error("rank must be at least 1");
  TreePtr t = Tree::symbol(kLeaf);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    t = Tree::symbol(*it, std::vector<TreePtr>(rank, t));
  return t;
}

TreeHom generic_hom(const std::vector<std::string>& letters, int rank) {
  std::map<std::string, TreePtr> patterns;
  for (const std::string& l : letters)
    patterns.emplace(l, Tree::symbol(l, std::vector<TreePtr>(rank, Tree::var(1))));
  patterns.emplace(kLeaf, Tree::symbol(kLeaf));
  return TreeHom::make(word_alphabet(letters), lifted_alphabet(letters, rank),
                       std::move(patterns));
}

TreeHom word_hom(const std::vector<std::string>& source_letters,
                 const std::vector<std::string>& target_letters,
                 const std::map<std::string, std::vector<std::string>>& images) {
  std::map<std::string, TreePtr> patterns;
  for (const std::string& l : source_letters) {
    auto it = images.find(l);
    if (it == images.end())
      throw domain_error("word homomorphism has no image for letter '" + l + "'");
    TreePtr pat = Tree::var(1);
    for (auto r = it->second.rbegin(); r != it->second.rend(); ++r)
      pat = Tree::symbol(*r, {pat});
    patterns.emplace(l, std::move(pat));
  }
  patterns.emplace(kLeaf, Tree::symbol(kLeaf));
  return TreeHom::make(word_alphabet(source_letters), word_alphabet(target_letters),
                       std::move(patterns));
}

}  // namespace alterweight
