// Conjugacy classes of the surface group as cyclically reduced words over the
// 8-letter alphabet, deduplicated under cyclic rotation and inversion, and the
// closed geodesics they index.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gth/bolza.hpp"

namespace gth {

using Word = std::vector<uint8_t>;

bool is_cyclically_reduced(const Word& w);
Word word_inverse(const Word& w);
// lexicographic minimum over all cyclic rotations of w and of w^-1
Word canonical_word(const Word& w);
std::string word_to_string(const Word& w);  // letters a..d, A..D for inverses
Word word_from_string(const std::string& s);
bool is_proper_power(const Word& w);

struct ConjugacyClass {
  Word word;          // canonical representative
  Mobius matrix;      // product over the word
  double trace_mag;   // |tr|
  double length() const { return 2.0 * std::acosh(trace_mag / 2.0); }
};

// all classes with a cyclically reduced representative of length <= max_len,
// sorted by (word length, lexicographic)
std::vector<ConjugacyClass> enumerate_classes(const BolzaSurface& surface, int max_len);
// plain single-threaded reference used to pin down the parallel version
std::vector<ConjugacyClass> enumerate_classes_serial(const BolzaSurface& surface, int max_len);

struct ClosedGeodesic {
  ConjugacyClass cls;
  double length = 0.0;      // 2 acosh(|tr|/2)
  PhasePoint base;          // on the axis, inside the closed fundamental domain
  Mobius deck;              // conjugated class matrix whose axis runs through base
};

/// Axis, period and in-domain base point of the closed geodesic of a class.
ClosedGeodesic geodesic_from_class(const BolzaSurface& surface, const ConjugacyClass& c);

// brute-force conjugacy test: exists delta with |delta| <= ball_len and
// delta a delta^-1 = +-b (or = +-b^-1 when unoriented)
bool conjugate_in_ball(const BolzaSurface& surface, const Mobius& a, const Mobius& b,
                       int ball_len, bool unoriented = true, double tol = 1e-9);

}  // namespace gth
