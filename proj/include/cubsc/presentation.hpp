#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubsc/complex.hpp"
#include "cubsc/word.hpp"

namespace cubsc {

enum class PresentationClass { Classical, Square };

struct ParseError : std::runtime_error {
  enum Kind { Syntax, Validation };
  Kind kind;
  int line;
  ParseError(Kind k, int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        kind(k),
        line(line_) {}
};

// A cubical presentation <X | Y_1, ..., Y_s>. Classical presentations
// build X as a wedge of circles and each Y_i as a labeled cycle.
class Presentation {
 public:
  PresentationClass cls = PresentationClass::Classical;
  std::vector<char> generators;        // classical only
  std::vector<std::string> relators;   // classical only

  const SquareComplex& base() const { return *base_; }
  const SquareComplex& cone(int i) const { return *cones_[i]; }
  const ComplexMorphism& cone_map(int i) const { return maps_[i]; }
  int n_cones() const { return static_cast<int>(cones_.size()); }

  // Classical letter <-> base dart translation.
  int dart_of_letter(char c) const;
  char letter_of_dart(int d) const;
  std::vector<int> word_to_base_path(const std::string& w) const;
  std::string base_path_to_word(const std::vector<int>& darts) const;

  // Forward dart path of the cycle Y_i (classical).
  std::vector<int> cone_cycle_path(int i) const;
  // Image in the base of a dart path of cone i.
  std::vector<int> cone_path_image(int i, const std::vector<int>& darts) const;

  static Presentation classical(const std::vector<char>& gens,
                                const std::vector<std::string>& rels);
  static Presentation square(SquareComplex base,
                             std::vector<SquareComplex> cones,
                             std::vector<std::vector<int>> vertex_maps,
                             std::vector<std::vector<int>> dart_maps,
                             std::vector<std::vector<int>> square_maps);

  Presentation(Presentation&&) = default;
  Presentation& operator=(Presentation&&) = default;
  Presentation(const Presentation&) = delete;
  Presentation& operator=(const Presentation&) = delete;

 private:
  Presentation() = default;
  void validate(int line_for_errors);

  std::unique_ptr<SquareComplex> base_;
  std::vector<std::unique_ptr<SquareComplex>> cones_;
  std::vector<ComplexMorphism> maps_;
};

// Parses the .scp presentation format (see docs/format.md). Throws
// ParseError with the offending line on bad input.
Presentation parse_presentation(const std::string& text);
Presentation parse_presentation_file(const std::string& path);

}  // namespace cubsc
