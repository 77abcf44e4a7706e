#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aqftop/fincat.hpp"
#include "aqftop/gns.hpp"
#include "aqftop/staralg.hpp"

namespace aqftop {

/**
 * Category files, one directive per line, `#` starts a comment:
 *
 *   category NAME
 *   objects x y ...
 *   morphism g : x -> y
 *   compose FIRST THEN = RESULT        # RESULT = THEN o FIRST
 *   identity x id_x                    # optional; switches to explicit identities
 *   orth f g
 *   orthogonality generators | closed  # default generators
 */
CategoryData parse_category(std::string_view text, const std::string& source);
CategoryData read_category_file(const std::filesystem::path& path);

/// A right-hand side kept as text until the basis it refers to is known.
struct SourceText {
  std::string text;
  std::string source;
  int line = 0;
  int column = 0;
};

struct MapDecl {
  std::string morphism;
  std::vector<std::pair<std::string, SourceText>> rows;  // source basis label -> image
  SourceText where;
};

struct NamedState {
  std::string name;
  StatePresentation state;
};

/**
 * Algebra files:
 *
 *   monoid NAME [set]
 *     basis e g
 *     unit e
 *     product g g = e            # omitted products are zero in vector mode
 *     star g = g                 # the involution on basis vectors
 *     involution linear          # default antilinear
 *   end
 *   state NAME on MONOID
 *     e = 1                      # omitted values are zero
 *   end
 *   import OTHER.alg             # relative to the importing file
 *   assign OBJECT MONOID
 *   map MORPHISM
 *     e = e                      # source basis label = image in the target basis
 *   end
 *
 * Vectors are sums of terms `[coef] label`, where coef is a rational, a
 * rational followed by i, or a parenthesized scalar; `0` is the zero vector.
 */
struct AlgebraFile {
  std::vector<Monoid> monoids;
  std::vector<NamedState> states;
  std::vector<std::pair<std::string, SourceText>> assignments;  // object -> monoid
  std::vector<MapDecl> maps;

  const Monoid* find_monoid(const std::string& name) const;
  const NamedState* find_state(const std::string& name) const;
};

AlgebraFile parse_algebra(std::string_view text, const std::string& source,
                          const std::filesystem::path& base_dir);
AlgebraFile read_algebra_file(const std::filesystem::path& path);

Vec parse_vector(const SourceText& text, const std::vector<std::string>& basis);

/// Objects go to their assigned monoids, morphisms to their declared maps.
/// Identity morphisms default to identity maps.
FunctorToMon resolve_functor(const AlgebraFile& file, const OrthCategory& cat);

}  // namespace aqftop
