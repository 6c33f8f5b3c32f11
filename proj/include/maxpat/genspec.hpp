#pragma once

#include <iosfwd>
#include <string>

#include "maxpat/sequence.hpp"

namespace maxpat {

// Generator spec files describe a source as key = value lines:
//
//   kind = substitution | periodic | rotation | toeplitz | interleave |
//          literal | shifted | residue-view
//   alphabet = 0,1          (label list; optional where inferable)
//   rule = 0 -> 0 1 ; 1 -> 0
//   seed = 0
//   word = 0 1              (periodic)
//   slope_cf = 0,1,1,1,...  (rotation: continued fraction coefficients)
//   intercept = 0/1
//   cuts = 0/1 -> 1 ; 46368/121393 -> 0
//   pattern = 1 0 1 ?       (toeplitz; '?' is a hole)
//   m = 3
//   residues = ref x, ref x, const 2   (interleave; also: periodic 0 1)
//   symbols = 5 7           (literal prefix)
//   tail = 0 1              (literal periodic continuation; optional)
//   t = 1                   (shifted)
//   i = 0                   (residue-view)
//   base = ref x            (shifted / residue-view)
//
// '[name]' lines open named sub-specs referenced with 'ref name'.
// Rotation sources take the certification range from the caller
// (length_guarantee), since it depends on how far the run will scan.
Sequence read_genspec(std::istream& in, std::uint64_t rotation_guarantee);
Sequence read_genspec_file(const std::string& path, std::uint64_t rotation_guarantee);

// Reads either format: generator specs are recognized by a 'kind =' line,
// anything else is treated as a sequence literal.
Sequence read_source_file(const std::string& path, std::uint64_t rotation_guarantee);

} // namespace maxpat
