#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "meshalkin/meshalkin.hpp"

namespace meshalkin {

// Insertion-ordered JSON keeps reports byte-identical across runs.
using Json = nlohmann::ordered_json;

struct FamilyDocInfo {
    int n = 0;
    int q = 0;
    int p = 0;
    SequenceMode mode = SequenceMode::full;
};

/// Header fields of a family document, read before a lattice exists.
FamilyDocInfo family_doc_info(const Json& doc);

struct FamilyLoadResult {
    Family family;
    std::vector<std::string> warnings;
};

/// Parses { "n", "q", "p", "mode", "sequences": [[matrix, ...], ...] }.
/// Matrices that are not in canonical form are canonicalized with a
/// warning; schema violations throw with a path diagnostic.
FamilyLoadResult family_from_json(const Json& doc, const Lattice& lattice);

Json family_to_json(const Family& family, const Lattice& lattice);

/// Matrix as an array of rows of field codes.
Json flat_matrix_json(const Flat& flat);

/// Parses a matrix at the given document path; canonicalizes with a
/// warning when the stored rows are not already canonical.
Flat flat_from_matrix_json(const Json& matrix, const Lattice& lattice,
                           const std::string& path,
                           std::vector<std::string>* warnings);

/// Single-flat document { "n", "q", "rows" }.
Json flat_doc_json(const Flat& flat, const Lattice& lattice);

/// List-of-flats document { "n", "q", "flats": [matrix, ...] }.
Json flat_set_doc_json(const std::vector<Flat>& flats, const Lattice& lattice);

std::pair<int, int> flat_doc_geometry(const Json& doc); // (n, q)

Flat flat_from_doc(const Json& doc, const Lattice& lattice,
                   std::vector<std::string>* warnings);

std::vector<Flat> flats_from_doc(const Json& doc, const Lattice& lattice,
                                 std::vector<std::string>* warnings);

/// { "num": decimal string, "den": decimal string }.
Json rational_json(const ExactRat& value);

} // namespace meshalkin
