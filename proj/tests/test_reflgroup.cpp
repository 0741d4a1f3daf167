#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ncgarside/reflgroup.hpp"

using namespace ncg;

namespace {

// Full group closure by BFS over generator multiplication.
std::set<std::string> full_group(const GroupCatalogEntry& e, size_t bound) {
  std::set<std::string> seen;
  std::vector<Matrix> frontier{Matrix::identity(e.rank, e.conductor)};
  seen.insert(frontier[0].key());
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& x : frontier)
      for (const auto& g : e.generators) {
        Matrix y = x * g;
        if (seen.insert(y.key()).second) {
          next.push_back(y);
          REQUIRE(seen.size() <= bound);
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("A2 is the symmetric group S3") {
  auto e = load_group("A2");
  CHECK(e.rank == 2);
  CHECK(e.degrees == std::vector<int>{2, 3});
  CHECK(e.coxeter_number == 3);
  CHECK(e.order == 6);
  CHECK(e.reflection_count == 3);
  CHECK(full_group(e, 12).size() == 6);
  CHECK(catalan_number(e) == 5);
  CHECK(reduced_decomposition_count(e) == 3);
}

TEST_CASE("dihedral groups I2(e) = G(e,e,2)") {
  for (int m : {3, 4, 5, 6, 7, 8}) {
    auto e = load_group("I2(" + std::to_string(m) + ")");
    CHECK(e.order == static_cast<std::uint64_t>(2 * m));
    CHECK(e.reflection_count == m);
    CHECK(e.coxeter_number == m);
    CHECK(full_group(e, 4 * static_cast<size_t>(m)).size() ==
          static_cast<size_t>(2 * m));
    CHECK(catalan_number(e) == m + 2);
    CHECK(reduced_decomposition_count(e) == m);
    auto refl = enumerate_reflections(e);
    CHECK(static_cast<int>(refl.size()) == m);
    for (const auto& r : refl) {
      CHECK((r.element * r.element).is_identity());
      CHECK(r.element.fixed_space_codim() == 1);
      CHECK(r.hyperplane.size() == 1);
    }
  }
}

TEST_CASE("programmatic Coxeter families have the classical degrees") {
  auto a3 = load_group("A3");
  CHECK(a3.degrees == std::vector<int>{2, 3, 4});
  CHECK(a3.order == 24);
  auto b3 = load_group("B3");
  CHECK(b3.degrees == std::vector<int>{2, 4, 6});
  CHECK(b3.order == 48);
  CHECK(b3.reflection_count == 9);
  auto d4 = load_group("D4");
  CHECK(d4.degrees == std::vector<int>{2, 4, 4, 6});
  CHECK(d4.order == 192);
  CHECK(d4.reflection_count == 12);
}

TEST_CASE("G(e,e,n) monomial groups validate") {
  for (auto [ee, nn] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {3, 4}, {5, 3}}) {
    auto e = load_group("G(" + std::to_string(ee) + "," + std::to_string(ee) + "," +
                        std::to_string(nn) + ")");
    CHECK(e.rank == nn);
    std::uint64_t order = 1;
    for (int d : e.degrees) order *= static_cast<std::uint64_t>(d);
    CHECK(e.order == order);
    CHECK(full_group(e, 2 * static_cast<size_t>(order)).size() == order);
  }
}

TEST_CASE("catalog groups load, validate and checksum") {
  for (const char* name : {"H3", "F4", "G24", "G27", "G29"}) {
    auto e = load_group(name);
    CHECK(e.checksum.rfind("fnv1a64:", 0) == 0);
    for (const auto& g : e.generators) {
      CHECK((g * g).is_identity());
      CHECK(g.fixed_space_codim() == 1);
    }
  }
}

TEST_CASE("H3 full group has 120 elements") {
  auto e = load_group("H3");
  CHECK(full_group(e, 300).size() == 120);
}

TEST_CASE("G24 full group has 336 elements") {
  auto e = load_group("G24");
  CHECK(full_group(e, 700).size() == 336);
}

TEST_CASE("reflection closure is conjugation invariant") {
  for (const char* name : {"A3", "B3", "H3", "G24"}) {
    auto e = load_group(name);
    auto refl = enumerate_reflections(e);
    std::set<std::string> keys;
    for (const auto& r : refl) keys.insert(r.element.key());
    for (const auto& r : refl)
      for (const auto& g : e.generators) {
        Matrix c = g * r.element * g;
        CHECK(keys.count(c.key()) == 1);
      }
  }
}

TEST_CASE("Coxeter element has order h and the right spectrum") {
  for (const char* name : {"A2", "A3", "B3", "H3", "F4", "G24", "I2(7)"}) {
    auto e = load_group(name);
    Matrix c = coxeter_element(e);
    CHECK(element_order(c, e.coxeter_number + 1) == e.coxeter_number);
  }
}

TEST_CASE("degree duality d_i + d_i* = h") {
  for (const char* name : {"A4", "B4", "D4", "H3", "H4", "F4", "E6", "G24", "G27",
                           "G29", "G33", "G34", "G(3,3,3)", "I2(6)"}) {
    auto e = load_group(name);
    for (size_t i = 0; i < e.degrees.size(); ++i)
      CHECK(e.degrees[i] + e.codegrees[i] == e.coxeter_number);
  }
}

TEST_CASE("unknown and malformed names are rejected") {
  CHECK_THROWS_AS(load_group("Z9"), UnknownGroup);
  CHECK_THROWS_AS(load_group("G(2,2,2)"), UnknownGroup);
  CHECK_THROWS_AS(load_group("G(3,1,3)"), UnknownGroup);
  CHECK_THROWS_AS(load_group("I2(2)"), UnknownGroup);
}

TEST_CASE("catalog tampering is detected by the checksum") {
  // load a pristine file, flip a degree, expect a validation error
  std::string dir = default_catalog_dir();
  std::ifstream in(dir + "/h3.json");
  REQUIRE(static_cast<bool>(in));
  nlohmann::json doc;
  in >> doc;
  doc["degrees"] = std::vector<int>{2, 6, 12};
  std::string tmpdir = "./tampered_catalog";
  std::filesystem::create_directories(tmpdir);
  std::ofstream out(tmpdir + "/h3.json");
  out << doc.dump();
  out.close();
  CHECK_THROWS_AS(load_group("H3", tmpdir), CatalogValidationError);
  std::filesystem::remove_all(tmpdir);
}
