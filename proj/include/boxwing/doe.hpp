#pragma once

#include "boxwing/design_space.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace boxwing {

enum class Provenance { factorial, center, axial_face, external };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

// An ordered list of codified design points with per-row provenance tags.
struct DesignMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    std::vector<Provenance> provenance; // same length as rows

    std::size_t n_vars() const { return labels.size(); }
    std::size_t n_rows() const { return rows.size(); }
    std::size_t count(Provenance p) const;
    void validate() const; // throws InputError
};

// Generators never exceed this many rows (full factorial growth guard).
inline constexpr std::uint64_t kMaxDesignRows = std::uint64_t{1} << 24;

// All 2^n corner points, entries in {-1,+1}. Deterministic lexicographic
// order with -1 before +1; the last label varies fastest.
DesignMatrix full_factorial(const DesignSpace& space);
DesignMatrix full_factorial(const std::vector<std::string>& labels);

// Box-Wilson central composite faced design: the full factorial block,
// then `center_replicates` all-zero rows, then for each variable the -1
// and +1 face points (single nonzero coordinate). Face distance is exactly
// 1, staying on the codified cube.
DesignMatrix ccf(const DesignSpace& space, std::size_t center_replicates);
DesignMatrix ccf(const std::vector<std::string>& labels, std::size_t center_replicates);

// Keeps the first occurrence of each distinct row, preserving order.
DesignMatrix deduplicate(const DesignMatrix& matrix);

// CSV: header of variable labels (+ optional trailing "provenance" column),
// one data row per point.
void write_design_csv(const DesignMatrix& matrix, const std::string& path,
                      bool with_provenance, bool allow_overwrite);
DesignMatrix read_design_csv(const std::string& path);

} // namespace boxwing
