#include "doctest.h"

#include "meshalkin/family_json.hpp"

using namespace meshalkin;

TEST_CASE("family documents round-trip") {
    Lattice pg12(2, 2);

    Family empty(2, SequenceMode::full);
    Json empty_doc = family_to_json(empty, pg12);
    FamilyLoadResult loaded = family_from_json(empty_doc, pg12);
    CHECK(loaded.family == empty);
    CHECK(loaded.warnings.empty());

    Family six(2, SequenceMode::full);
    for (auto& s :
         enumerate_sequences(pg12, 2, RankVector{1, 1}, SequenceMode::full)) {
        six.insert(std::move(s));
    }
    Json doc = family_to_json(six, pg12);
    CHECK(doc["n"] == 2);
    CHECK(doc["q"] == 2);
    CHECK(doc["p"] == 2);
    CHECK(doc["mode"] == "full");
    FamilyLoadResult round = family_from_json(doc, pg12);
    CHECK(round.family == six);
    CHECK(round.family.profile() == six.profile());
    CHECK(round.warnings.empty());
    // Serialization is deterministic.
    CHECK(family_to_json(round.family, pg12).dump() == doc.dump());
}

TEST_CASE("non-canonical matrices load with a warning") {
    Lattice pg12(2, 2);
    Json doc;
    doc["n"] = 2;
    doc["q"] = 2;
    doc["p"] = 2;
    doc["mode"] = "full";
    // (1,1) spans the same point as itself but written with a redundant row,
    // paired with a point; the join is everything.
    doc["sequences"] = Json::array();
    doc["sequences"].push_back(
        Json::array({Json::array({Json::array({1, 1}), Json::array({1, 1})}),
                     Json::array({Json::array({1, 0})})}));
    FamilyLoadResult loaded = family_from_json(doc, pg12);
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("sequences[0][0]") != std::string::npos);
    CHECK(loaded.family.size() == 1);
    CHECK(loaded.family.sequences().begin()->flats[0].rank() == 1);
}

TEST_CASE("schema violations carry a path") {
    Lattice pg12(2, 2);
    Json doc;
    doc["n"] = 2;
    doc["q"] = 2;
    doc["p"] = 2;
    doc["mode"] = "full";
    doc["sequences"] = Json::array();

    SUBCASE("bad mode") {
        doc["mode"] = "quasi";
        CHECK_THROWS_AS(family_from_json(doc, pg12), std::runtime_error);
    }
    SUBCASE("wrong geometry") {
        doc["q"] = 3;
        CHECK_THROWS_AS(family_from_json(doc, pg12), std::runtime_error);
    }
    SUBCASE("row length") {
        doc["sequences"].push_back(
            Json::array({Json::array({Json::array({1, 0, 0})}),
                         Json::array({Json::array({0, 1})})}));
        CHECK_THROWS_WITH_AS(family_from_json(doc, pg12),
                             "sequences[0][0][0]: row has 3 entries, expected 2",
                             std::runtime_error);
    }
    SUBCASE("field code out of range") {
        doc["sequences"].push_back(
            Json::array({Json::array({Json::array({1, 2})}),
                         Json::array({Json::array({0, 1})})}));
        CHECK_THROWS_AS(family_from_json(doc, pg12), std::runtime_error);
    }
    SUBCASE("sequence violating rank additivity") {
        doc["sequences"].push_back(
            Json::array({Json::array({Json::array({1, 0})}),
                         Json::array({Json::array({1, 0})})}));
        CHECK_THROWS_AS(family_from_json(doc, pg12), std::runtime_error);
    }
    SUBCASE("wrong sequence length") {
        doc["sequences"].push_back(Json::array({Json::array()}));
        CHECK_THROWS_AS(family_from_json(doc, pg12), std::runtime_error);
    }
}

TEST_CASE("flat and flat-list documents") {
    Lattice fano(3, 2);
    Flat line = fano.level(2)[0];
    Json doc = flat_doc_json(line, fano);
    std::vector<std::string> warnings;
    CHECK(flat_from_doc(doc, fano, &warnings) == line);
    CHECK(warnings.empty());

    Json list = flat_set_doc_json(fano.level(1), fano);
    auto flats = flats_from_doc(list, fano, &warnings);
    CHECK(flats == fano.level(1));
    auto [n, q] = flat_doc_geometry(list);
    CHECK(n == 3);
    CHECK(q == 2);
}

TEST_CASE("rational serialization uses decimal strings") {
    ExactRat r(-3, 7);
    r.canonicalize();
    Json j = rational_json(r);
    CHECK(j["num"] == "-3");
    CHECK(j["den"] == "7");
}
