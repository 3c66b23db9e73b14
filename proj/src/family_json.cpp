#include "meshalkin/family_json.hpp"

#include <stdexcept>

namespace meshalkin {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

int require_int(const Json& doc, const std::string& key) {
    if (!doc.contains(key)) schema_error(key, "missing field");
    const Json& v = doc.at(key);
    if (!v.is_number_integer()) schema_error(key, "expected an integer");
    return v.get<int>();
}

SequenceMode parse_mode(const Json& doc) {
    if (!doc.contains("mode")) schema_error("mode", "missing field");
    std::string mode = doc.at("mode").get<std::string>();
    if (mode == "full") return SequenceMode::full;
    if (mode == "partial") return SequenceMode::partial;
    schema_error("mode", "expected \"full\" or \"partial\", got \"" + mode + "\"");
}

void check_geometry(const Json& doc, const Lattice& lattice,
                    const std::string& what) {
    int n = require_int(doc, "n");
    int q = require_int(doc, "q");
    if (n != lattice.rank() || q != lattice.field().q()) {
        schema_error(what, "document is for n=" + std::to_string(n) +
                               ", q=" + std::to_string(q) +
                               " but the lattice has n=" +
                               std::to_string(lattice.rank()) +
                               ", q=" + std::to_string(lattice.field().q()));
    }
}

} // namespace

FamilyDocInfo family_doc_info(const Json& doc) {
    FamilyDocInfo info;
    info.n = require_int(doc, "n");
    info.q = require_int(doc, "q");
    info.p = require_int(doc, "p");
    info.mode = parse_mode(doc);
    if (info.n < 0) schema_error("n", "must be nonnegative");
    if (info.p < 1) schema_error("p", "must be at least 1");
    return info;
}

Flat flat_from_matrix_json(const Json& matrix, const Lattice& lattice,
                           const std::string& path,
                           std::vector<std::string>* warnings) {
    if (!matrix.is_array()) schema_error(path, "expected an array of rows");
    std::vector<std::vector<FieldElement>> rows;
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        const Json& row = matrix[r];
        std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array()) schema_error(row_path, "expected an array");
        if (static_cast<int>(row.size()) != lattice.rank()) {
            schema_error(row_path, "row has " + std::to_string(row.size()) +
                                       " entries, expected " +
                                       std::to_string(lattice.rank()));
        }
        std::vector<FieldElement> out;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const Json& cell = row[c];
            if (!cell.is_number_integer()) {
                schema_error(row_path + "[" + std::to_string(c) + "]",
                             "expected an integer field code");
            }
            int code = cell.get<int>();
            if (!lattice.field().is_valid(code)) {
                schema_error(row_path + "[" + std::to_string(c) + "]",
                             "code " + std::to_string(code) + " outside GF(" +
                                 std::to_string(lattice.field().q()) + ")");
            }
            out.push_back(code);
        }
        rows.push_back(std::move(out));
    }
    if (is_canonical(lattice, rows)) {
        return Flat{std::move(rows), lattice.rank()};
    }
    if (warnings) {
        warnings->push_back(path + ": matrix not in canonical form; canonicalized");
    }
    return canonicalize(lattice, std::move(rows));
}

FamilyLoadResult family_from_json(const Json& doc, const Lattice& lattice) {
    FamilyDocInfo info = family_doc_info(doc);
    check_geometry(doc, lattice, "family document");
    if (!doc.contains("sequences") || !doc.at("sequences").is_array()) {
        schema_error("sequences", "missing or not an array");
    }
    FamilyLoadResult out{Family(info.p, info.mode), {}};
    const Json& seqs = doc.at("sequences");
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        std::string path = "sequences[" + std::to_string(i) + "]";
        const Json& entry = seqs[i];
        if (!entry.is_array() || static_cast<int>(entry.size()) != info.p) {
            schema_error(path, "expected an array of " + std::to_string(info.p) +
                                   " matrices");
        }
        std::vector<Flat> flats;
        for (std::size_t k = 0; k < entry.size(); ++k) {
            flats.push_back(flat_from_matrix_json(
                entry[k], lattice, path + "[" + std::to_string(k) + "]",
                &out.warnings));
        }
        try {
            out.family.insert(make_sequence(lattice, std::move(flats), info.mode));
        } catch (const std::invalid_argument& e) {
            schema_error(path, e.what());
        }
    }
    return out;
}

Json flat_matrix_json(const Flat& flat) {
    Json matrix = Json::array();
    for (const auto& row : flat.rows) {
        Json jrow = Json::array();
        for (FieldElement e : row) jrow.push_back(e);
        matrix.push_back(std::move(jrow));
    }
    return matrix;
}

Json family_to_json(const Family& family, const Lattice& lattice) {
    Json doc;
    doc["n"] = lattice.rank();
    doc["q"] = lattice.field().q();
    doc["p"] = family.p();
    doc["mode"] = family.mode() == SequenceMode::full ? "full" : "partial";
    Json seqs = Json::array();
    for (const auto& seq : family.sequences()) {
        Json entry = Json::array();
        for (const Flat& f : seq.flats) entry.push_back(flat_matrix_json(f));
        seqs.push_back(std::move(entry));
    }
    doc["sequences"] = std::move(seqs);
    return doc;
}

Json flat_doc_json(const Flat& flat, const Lattice& lattice) {
    Json doc;
    doc["n"] = lattice.rank();
    doc["q"] = lattice.field().q();
    doc["rows"] = flat_matrix_json(flat);
    return doc;
}

Json flat_set_doc_json(const std::vector<Flat>& flats, const Lattice& lattice) {
    Json doc;
    doc["n"] = lattice.rank();
    doc["q"] = lattice.field().q();
    Json arr = Json::array();
    for (const Flat& f : flats) arr.push_back(flat_matrix_json(f));
    doc["flats"] = std::move(arr);
    return doc;
}

std::pair<int, int> flat_doc_geometry(const Json& doc) {
    return {require_int(doc, "n"), require_int(doc, "q")};
}

Flat flat_from_doc(const Json& doc, const Lattice& lattice,
                   std::vector<std::string>* warnings) {
    check_geometry(doc, lattice, "flat document");
    if (!doc.contains("rows")) schema_error("rows", "missing field");
    return flat_from_matrix_json(doc.at("rows"), lattice, "rows", warnings);
}

std::vector<Flat> flats_from_doc(const Json& doc, const Lattice& lattice,
                                 std::vector<std::string>* warnings) {
    check_geometry(doc, lattice, "flat list document");
    if (!doc.contains("flats") || !doc.at("flats").is_array()) {
        schema_error("flats", "missing or not an array");
    }
    std::vector<Flat> out;
    const Json& arr = doc.at("flats");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(flat_from_matrix_json(
            arr[i], lattice, "flats[" + std::to_string(i) + "]", warnings));
    }
    return out;
}

Json rational_json(const ExactRat& value) {
    Json out;
    out["num"] = value.get_num().get_str();
    out["den"] = value.get_den().get_str();
    return out;
}

} // namespace meshalkin
