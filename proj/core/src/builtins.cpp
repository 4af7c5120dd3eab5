#include <cctype>
#include <optional>

#include "kazhdanlab/group.hpp"

namespace kazhdanlab {

namespace {

struct BuiltinName {
  char family;  // 'Z', 'D', 'S', 'A', 'Q'
  int n;
  std::string canonical;
};

std::optional<BuiltinName> parse_builtin(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != '_') s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (s.size() < 2) return std::nullopt;
  const char fam = s[0];
  if (fam != 'Z' && fam != 'D' && fam != 'S' && fam != 'A' && fam != 'Q') return std::nullopt;
  int n = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    n = n * 10 + (s[i] - '0');
    if (n > 1000000) return std::nullopt;
  }
  BuiltinName b{fam, n, std::string(1, fam) + std::to_string(n)};
  switch (fam) {
    case 'Z': return b.n >= 1 ? std::optional(b) : std::nullopt;
    case 'D': return b.n >= 2 ? std::optional(b) : std::nullopt;
    case 'S': return (b.n == 3 || b.n == 4) ? std::optional(b) : std::nullopt;
    case 'A': return b.n == 4 ? std::optional(b) : std::nullopt;
    case 'Q': return b.n == 8 ? std::optional(b) : std::nullopt;
  }
  return std::nullopt;
}

// Default generating sets, always symmetrized with the identity prepended:
//   Z_n: {e, g, g^-1} for the n-cycle g
//   D_n: {e, r, r^-1, s} for the rotation r and a reflection s
//   S3:  {e, (12), (123), (132)}
//   S4:  {e, (12), (1234), (1432)}
//   A4:  {e, (123), (132), (12)(34)}
//   Q8:  {e, i, -i, j, -j} in the 2x2 unitary realization
GroupPtr build_named(const BuiltinName& b) {
  GroupSpec s;
  s.name = b.canonical;
  s.symmetrize = true;
  switch (b.family) {
    case 'Z':
      s.kind = GroupSpec::Kind::cyclic;
      s.n = b.n;
      return build_group(s);
    case 'D':
      s.kind = GroupSpec::Kind::dihedral;
      s.n = b.n;
      return build_group(s);
    case 'S':
      s.kind = GroupSpec::Kind::permutation;
      if (b.n == 3)
        s.generators = {{1, 0, 2}, {1, 2, 0}};
      else
        s.generators = {{1, 0, 2, 3}, {1, 2, 3, 0}};
      return build_group(s);
    case 'A':
      s.kind = GroupSpec::Kind::permutation;
      s.generators = {{1, 2, 0, 3}, {1, 0, 3, 2}};
      return build_group(s);
    case 'Q': {
      const cd i(0.0, 1.0);
      Mat qi(2, 2), qj(2, 2);
      qi << i, 0.0, 0.0, -i;
      qj << 0.0, 1.0, -1.0, 0.0;
      return build_matrix_group(b.canonical, {qi, qj}).group;
    }
  }
  throw ConfigError("unreachable builtin family");
}

}  // namespace

GroupPtr builtin_group(const std::string& name) {
  auto parsed = parse_builtin(name);
  if (!parsed) throw ConfigError("unknown builtin group '" + name + "'");
  return build_named(*parsed);
}

bool is_builtin_group_name(const std::string& name) {
  return parse_builtin(name).has_value();
}

}  // namespace kazhdanlab
