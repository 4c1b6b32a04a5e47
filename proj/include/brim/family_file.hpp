#ifndef BRIM_FAMILY_FILE_HPP
#define BRIM_FAMILY_FILE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "brim/monomial.hpp"

namespace brim {

/// A parsed family file.
///
/// Grammar (line oriented, '#' starts a comment, blank lines ignored):
///
///     vars <d>
///     ideal [name]
///     gen <a_1> ... <a_d>
///     gen ...
///     ideal [name]
///     ...
///
/// Generators need not be minimal.
struct FamilyFile {
  std::string path;
  std::size_t dim = 0;
  std::vector<MonomialIdeal> ideals;
  std::vector<std::string> names;
  /// Line of each `ideal` header, for diagnostics.
  std::vector<std::size_t> lines;

  /// Throws NotPrimary if the file was parsed with non-primary ideals allowed
  /// and one of them is not m-primary.
  IdealFamily family() const { return IdealFamily(ideals); }
};

/// Throws ParseError on syntax errors, dimension mismatches, empty or unit
/// ideals and (unless allowed) ideals that are not m-primary.
FamilyFile parse_family_file(std::string_view text, bool allow_non_primary = false);
IdealFamily parse_family(std::string_view text);
FamilyFile load_family_file(const std::string& path, bool allow_non_primary = false);

/// Inverse of parse_family; names are optional.
std::string render_family(const IdealFamily& family, const std::vector<std::string>& names = {});

}  // namespace brim

#endif  // BRIM_FAMILY_FILE_HPP
