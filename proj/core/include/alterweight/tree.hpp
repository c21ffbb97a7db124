#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "alterweight/errors.hpp"

namespace alterweight {

class Tree;
using TreePtr = std::shared_ptr<const Tree>;

// Immutable node over a ranked alphabet, possibly a variable leaf x_i.
// Subtrees are shared liberally (a generic tree reuses one subtree per
// level), so recursive walks memoize on node identity where it matters.
class Tree {
 public:
  static TreePtr symbol(std::string label, std::vector<TreePtr> children = {});
  static TreePtr var(int index);

  bool is_var() const { return var_ != 0; }
  int var_index() const { return var_; }
  const std::string& label() const { return label_; }
  const std::vector<TreePtr>& children() const { return children_; }

 private:
  Tree() = default;
  std::string label_;
  int var_ = 0;
  std::vector<TreePtr> children_;
};

bool tree_eq(const TreePtr&, const TreePtr&);
std::string tree_to_string(const TreePtr&);

// S-expression syntax: a(b(#,#),#); variables written x1, x2, ...
TreePtr parse_tree(const std::string&);

// Positions are dot-separated 1-based child indices, "" for the root.
std::vector<int> parse_position(const std::string&);
std::vector<std::string> positions(const TreePtr&);  // lexicographic order
std::string label_at(const TreePtr&, const std::string& pos);
TreePtr subtree_at(const TreePtr&, const std::string& pos);
TreePtr substitute_at(const TreePtr&, const std::string& pos, const TreePtr& replacement);

// Replaces position m_i by replacements[i]; the positions are taken in
// lexicographic order and applied last-to-first, so with nested positions
// an earlier (outer) substitution wins.
TreePtr substitute_many(const TreePtr&, const std::vector<std::string>& posns,
                        const std::vector<TreePtr>& replacements);

// Simultaneous substitution x_i := replacements[i-1] in one pass;
// variables inside the replacements are left alone.
TreePtr substitute_vars(const TreePtr&, const std::vector<TreePtr>& replacements);

int max_var(const TreePtr&);
long long tree_size(const TreePtr&);
int tree_depth(const TreePtr&);

struct RankedAlphabet {
  std::vector<std::pair<std::string, int>> symbols;

  bool contains(const std::string& name) const;
  int rank(const std::string& name) const;
  int index(const std::string& name) const;
  int max_rank() const;

  // Parses the "name/rank" declaration list.
  static RankedAlphabet from_strings(const std::vector<std::string>&);
  std::vector<std::string> to_strings() const;

  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;
};

// Verifies arities (and that variables only occur when allowed).
void check_tree(const RankedAlphabet&, const TreePtr&, bool allow_vars);

// Tree homomorphism given by one pattern per source symbol; a pattern for
// a rank-k symbol may use variables x1..xk. The flags are computed, not
// declared: linear means no variable occurs twice in a pattern,
// non-deleting means every pattern contains a target symbol and mentions
// each of its variables at least once.
struct TreeHom {
  RankedAlphabet source;
  RankedAlphabet target;
  std::map<std::string, TreePtr> patterns;
  bool linear = false;
  bool non_deleting = false;

  static TreeHom make(RankedAlphabet source, RankedAlphabet target,
                      std::map<std::string, TreePtr> patterns);
};

TreePtr apply_hom(const TreeHom&, const TreePtr&);          // ground trees only
TreePtr apply_hom_pattern(const TreeHom&, const TreePtr&);  // variables pass through

// h2 after h1: source of h1, target of h2.
TreeHom compose_homs(const TreeHom& h1, const TreeHom& h2);

// All ground trees mapping to t, by memoized top-down matching.
// Rejects deleting homomorphisms (their preimage sets can be infinite).
std::vector<TreePtr> hom_preimages(const TreeHom&, const TreePtr&);

// Word-tree encoding over rank-1 letters terminated by the leaf #:
// the word ab becomes a(b(#)).
inline const std::string kLeaf = "#";
RankedAlphabet word_alphabet(const std::vector<std::string>& letters);
RankedAlphabet lifted_alphabet(const std::vector<std::string>& letters, int rank);
TreePtr word_tree(const std::vector<std::string>& word);
std::vector<std::string> tree_to_word(const TreePtr&);

// The full rank-r tree of a word: t_eps = #, t_{av} = a(t_v, ..., t_v).
TreePtr generic_tree(const std::vector<std::string>& word, int rank);

// Word trees to generic trees as a homomorphism: a maps to a(x1,...,x1).
TreeHom generic_hom(const std::vector<std::string>& letters, int rank);

// A word homomorphism encoded as a rank-1 tree homomorphism; an empty
// image makes the pattern a bare x1 and therefore the hom deleting.
TreeHom word_hom(const std::vector<std::string>& source_letters,
                 const std::vector<std::string>& target_letters,
                 const std::map<std::string, std::vector<std::string>>& images);

}  // namespace alterweight
