#include <bondcat/poset.hpp>
#include <catch2/catch_amalgamated.hpp>

using namespace bondcat;

namespace {
PosetPtr uavb() { return make_poset({"u", "a", "v", "b"}, std::vector<int>{2, 3, 0, 1}); }
}  // namespace

TEST_CASE("anti-lexicographic order: degree dominates") {
  CHECK(compare({0, 0}, {2, 1}) == std::strong_ordering::less);
  CHECK(compare({3, 0}, {0, 1}) == std::strong_ordering::less);  // any bases
  CHECK(compare({0, 1}, {1, 1}) == std::strong_ordering::less);  // u_1 < a_1
  CHECK(compare({1, 3}, {1, 3}) == std::strong_ordering::equal);
}

TEST_CASE("involution preserves degree and squares to the identity") {
  PosetPtr p = uavb();
  CHECK(involution(*p, {0, 7}) == GradedElement{2, 7});  // sigma(u) = v
  GradedElement a2{1, 2};
  CHECK(involution(*p, involution(*p, a2)) == a2);
  PosetPtr q = make_poset({"w"}, std::vector<int>{0});
  CHECK(involution(*q, {0, 4}) == GradedElement{0, 4});  // fixed point
}

TEST_CASE("order is strict and total on small supports") {
  std::vector<GradedElement> es;
  for (int b = 0; b < 4; ++b)
    for (std::int64_t d = -1; d <= 1; ++d) es.push_back({b, d});
  for (const auto& x : es)
    for (const auto& y : es) {
      if (x == y) {
        CHECK(compare(x, y) == std::strong_ordering::equal);
        continue;
      }
      CHECK(((x < y) != (y < x)));  // antisymmetric, total
      for (const auto& z : es)
        if (x < y && y < z) CHECK(x < z);
    }
}

TEST_CASE("involution is an order-2 bijection on a degree slice") {
  PosetPtr p = uavb();
  std::set<GradedElement> slice, image;
  for (int b = 0; b < 4; ++b) slice.insert({b, 3});
  for (const auto& x : slice) {
    GradedElement sx = involution(*p, x);
    CHECK(sx.degree == 3);
    image.insert(sx);
  }
  CHECK(image == slice);
}

TEST_CASE("degree overflow is an error, not a wraparound") {
  GradedElement top{0, std::numeric_limits<std::int64_t>::max()};
  CHECK_THROWS_AS(shifted(top, 1), DegreeOverflow);
  GradedElement bot{0, std::numeric_limits<std::int64_t>::min()};
  CHECK_THROWS_AS(shifted(bot, -1), DegreeOverflow);
}

TEST_CASE("poset validation") {
  CHECK_THROWS_AS(make_poset({"u", "u"}, std::vector<int>{0, 1}), Error);
  CHECK_THROWS_AS(make_poset({"u", "v", "w"}, std::vector<int>{1, 2, 0}), Error);  // not an involution
  PosetPtr p = make_poset({"u", "v"}, std::map<std::string, std::string>{{"u", "v"}});
  CHECK(p->sigma == std::vector<int>{1, 0});
}
