#include <numeric>

#include "doctest.h"
#include "fcl/derivation.hpp"
#include "support/corpus.hpp"

using namespace fcl;
using namespace fcl::testsupport;

namespace {

std::shared_ptr<const Lattice> godel3() {
  static auto lat = std::make_shared<const Lattice>(Lattice::chain(3, TNormFamily::godel));
  return lat;
}

std::shared_ptr<const Lattice> boolean2() {
  static auto lat = std::make_shared<const Lattice>(Lattice::chain(2, TNormFamily::lukasiewicz));
  return lat;
}

Context chain_counterexample() { return Context(godel3(), {"x", "y"}, {"star"}, {0, 1}); }

Context crisp_identity2() {
  return Context(boolean2(), {"u", "v"}, {"p", "q"}, {1, 0, 0, 1});
}

}  // namespace

TEST_CASE("derivation operators on the three-chain context") {
  Context ctx = chain_counterexample();

  CHECK(intent(ctx, {0, 0}) == LSubset{2});  // bottom input, top output
  CHECK(intent(ctx, {0, 1}) == LSubset{2});
  CHECK(extent(ctx, {2}) == LSubset{0, 1});
  CHECK(extent(ctx, {0}) == LSubset{2, 2});

  Context neg = ctx.negated();  // entries 1, 0
  CHECK(exists_image(neg, {0, 0}) == LSubset{0});
  CHECK(exists_image(neg, {2, 0}) == LSubset{2});
  CHECK(forall_preimage(neg, {0}) == LSubset{0, 2});
  CHECK(forall_preimage(neg, {2}) == LSubset{2, 2});

  CHECK_THROWS_AS(intent(ctx, {0}), std::invalid_argument);
  CHECK_THROWS_AS(extent(ctx, {0, 0}), std::invalid_argument);
}

TEST_CASE("crisp derivation matches classical reading") {
  Context ctx = crisp_identity2();
  CHECK(intent(ctx, {1, 0}) == LSubset{1, 0});  // attributes shared by u
  CHECK(intent(ctx, {1, 1}) == LSubset{0, 0});  // nothing shared by both
  CHECK(extent(ctx, {0, 1}) == LSubset{0, 1});
  CHECK(exists_image(ctx, {1, 0}) == LSubset{1, 0});
  CHECK(forall_preimage(ctx, {1, 0}) == LSubset{1, 0});
}

TEST_CASE("attribute-side composites on the three-chain context") {
  Context ctx = chain_counterexample();
  CHECK(fca_attr_closure(ctx, {1}) == LSubset{1});
  Context sub = ctx.restricted({.objects = {0}, .attributes = {0}});
  CHECK(fca_attr_closure(sub, {1}) == LSubset{2});  // double negation jumps to top
}

TEST_CASE("subset order degrees") {
  const Lattice& god = *godel3();
  CHECK(subset_order(god, {1, 2}, {1, 2}) == god.top());
  CHECK(subset_order(god, {0, 0}, {2, 1}) == god.top());
  CHECK(subset_order(god, {1, 2}, {0, 2}) == 0);
  CHECK(subset_order(god, {}, {}) == god.top());
  CHECK_THROWS_AS(subset_order(god, {0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("concept enumeration on frozen instances") {
  Context crisp = crisp_identity2();
  ConceptLattice m = enumerate_concepts(crisp, Mode::fca, Strategy::naive);
  CHECK(m.concepts == std::vector<LSubset>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  Context ctx = chain_counterexample();
  ConceptLattice mphi = enumerate_concepts(ctx, Mode::fca, Strategy::naive);
  CHECK(mphi.concepts == std::vector<LSubset>{{0, 1}, {0, 2}, {2, 2}});

  ConceptLattice kneg = enumerate_concepts(ctx.negated(), Mode::rst, Strategy::naive);
  CHECK(kneg.concepts == std::vector<LSubset>{{0, 2}, {1, 2}, {2, 2}});

  CHECK(kneg.find({1, 2}) == 1);
  CHECK(kneg.find({1, 1}) == -1);
}

TEST_CASE("degenerate carriers enumerate to the single trivial concept") {
  Context no_attrs(godel3(), {"x", "y"}, {}, {});
  for (Mode mode : {Mode::fca, Mode::rst}) {
    ConceptLattice cl = enumerate_concepts(no_attrs, mode, Strategy::generators);
    CHECK(cl.concepts == std::vector<LSubset>{{2, 2}});
  }
  Context no_objs(godel3(), {}, {"p"}, {});
  ConceptLattice cl = enumerate_concepts(no_objs, Mode::fca, Strategy::naive);
  CHECK(cl.concepts == std::vector<LSubset>{LSubset{}});
  CHECK(cl.order == std::vector<Elem>{2});
}

TEST_CASE("naive enumeration honors the budget") {
  Context ctx = chain_counterexample();
  try {
    enumerate_concepts(ctx, Mode::fca, Strategy::naive, 5);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(e.required() == 9);
    CHECK(e.limit() == 5);
    CHECK(std::string(e.what()).find("3^2") != std::string::npos);
  }
}

TEST_CASE("generator strategy equals the naive oracle across the corpus") {
  for (const Context& ctx : seeded_corpus(10, 123)) {
    for (Mode mode : {Mode::fca, Mode::rst}) {
      ConceptLattice fast = enumerate_concepts(ctx, mode, Strategy::generators);
      ConceptLattice slow = enumerate_concepts(ctx, mode, Strategy::naive);
      CHECK(fast.concepts == slow.concepts);
      CHECK(fast.order == slow.order);
      CHECK(fast.concepts == oracle_concepts(ctx, mode));
    }
  }
}

TEST_CASE("concept order matrices satisfy the order axioms") {
  for (const Context& ctx : seeded_corpus(6, 321)) {
    const Lattice& lat = ctx.lattice();
    for (Mode mode : {Mode::fca, Mode::rst}) {
      ConceptLattice cl = enumerate_concepts(ctx, mode, Strategy::generators);
      const int n = static_cast<int>(cl.concepts.size());
      for (int i = 0; i < n; ++i) {
        CHECK(cl.order_at(i, i) == lat.top());
        for (int j = 0; j < n; ++j) {
          if (i != j && cl.order_at(i, j) == lat.top() && cl.order_at(j, i) == lat.top())
            FAIL("order not antisymmetric");
          for (int k = 0; k < n; ++k)
            CHECK(lat.leq(lat.tensor(cl.order_at(i, j), cl.order_at(j, k)), cl.order_at(i, k)));
        }
      }
    }
  }
}

TEST_CASE("adjunction hom equalities hold everywhere") {
  for (const Context& ctx : seeded_corpus(8, 77, 2, 2)) {
    const Lattice& lat = ctx.lattice();
    LSubset mu = constant_subset(ctx.object_count(), 0);
    do {
      const LSubset up = intent(ctx, mu);
      const LSubset ex = exists_image(ctx, mu);
      LSubset la = constant_subset(ctx.attribute_count(), 0);
      do {
        CHECK(subset_order(lat, la, up) == subset_order(lat, mu, extent(ctx, la)));
        CHECK(subset_order(lat, ex, la) == subset_order(lat, mu, forall_preimage(ctx, la)));
      } while (next_subset(la, lat));
    } while (next_subset(mu, lat));
  }
}

TEST_CASE("triple identities and closure laws") {
  for (const Context& ctx : seeded_corpus(8, 99, 2, 3)) {
    const Lattice& lat = ctx.lattice();
    LSubset mu = constant_subset(ctx.object_count(), 0);
    do {
      const LSubset up = intent(ctx, mu);
      CHECK(intent(ctx, extent(ctx, up)) == up);
      const LSubset ex = exists_image(ctx, mu);
      CHECK(exists_image(ctx, forall_preimage(ctx, ex)) == ex);
      for (Mode mode : {Mode::fca, Mode::rst}) {
        const LSubset closed = mode_closure(ctx, mode, mu);
        CHECK(subset_order(lat, mu, closed) == lat.top());
        CHECK(mode_closure(ctx, mode, closed) == closed);
      }
    } while (next_subset(mu, lat));

    LSubset la = constant_subset(ctx.attribute_count(), 0);
    do {
      const LSubset down = extent(ctx, la);
      CHECK(extent(ctx, intent(ctx, down)) == down);
      const LSubset fa = forall_preimage(ctx, la);
      CHECK(forall_preimage(ctx, exists_image(ctx, fa)) == fa);
      CHECK(subset_order(lat, la, fca_attr_closure(ctx, la)) == lat.top());
      CHECK(subset_order(lat, rst_attr_interior(ctx, la), la) == lat.top());
    } while (next_subset(la, lat));
  }
}

TEST_CASE("closure operators are monotone in the graded sense") {
  for (const Context& ctx : seeded_corpus(4, 55, 2, 2)) {
    const Lattice& lat = ctx.lattice();
    LSubset mu = constant_subset(ctx.object_count(), 0);
    do {
      LSubset nu = constant_subset(ctx.object_count(), 0);
      do {
        for (Mode mode : {Mode::fca, Mode::rst})
          CHECK(lat.leq(subset_order(lat, mu, nu),
                        subset_order(lat, mode_closure(ctx, mode, mu),
                                     mode_closure(ctx, mode, nu))));
      } while (next_subset(nu, lat));
    } while (next_subset(mu, lat));
  }
}

TEST_CASE("restriction identities for the rst operators") {
  for (const Context& ctx : seeded_corpus(6, 2024)) {
    const Lattice& lat = ctx.lattice();
    for (const Selector& sel : all_selectors(ctx)) {
      const Context cols = ctx.restricted_attributes(sel.attributes);
      const Context rows = ctx.restricted_objects(sel.objects);
      LSubset mu = constant_subset(ctx.object_count(), 0);
      do {
        CHECK(exists_image(cols, mu) == restrict_to(exists_image(ctx, mu), sel.attributes));
      } while (next_subset(mu, lat));
      LSubset la = constant_subset(ctx.attribute_count(), 0);
      do {
        CHECK(forall_preimage(rows, la) == restrict_to(forall_preimage(ctx, la), sel.objects));
      } while (next_subset(la, lat));
      LSubset part = constant_subset(rows.object_count(), 0);
      do {
        CHECK(exists_image(rows, part) ==
              exists_image(ctx, extend_by_bottom(part, sel.objects, ctx.object_count(), lat)));
      } while (next_subset(part, lat));
    }
  }
}

TEST_CASE("formal concepts equal property-oriented concepts of the negation under dne") {
  for (const Context& ctx : seeded_corpus(10, 4711)) {
    if (!ctx.lattice().satisfies_dne()) continue;
    CHECK(enumerate_concepts(ctx, Mode::fca, Strategy::generators).concepts ==
          enumerate_concepts(ctx.negated(), Mode::rst, Strategy::generators).concepts);
  }
  // and they genuinely differ without double negation
  Context ctx = chain_counterexample();
  CHECK_FALSE(enumerate_concepts(ctx, Mode::fca, Strategy::naive).concepts ==
              enumerate_concepts(ctx.negated(), Mode::rst, Strategy::naive).concepts);
}

TEST_CASE("identity infomorphism acts as the identity on concepts") {
  Context ctx = crisp_identity2();
  Infomorphism id{.object_map = {0, 1}, .attribute_map = {0, 1}};
  CHECK_NOTHROW(verify_infomorphism(ctx, ctx, id));
  for (Mode mode : {Mode::fca, Mode::rst})
    for (const LSubset& c : enumerate_concepts(ctx, mode, Strategy::naive).concepts) {
      CHECK(infomorphism_image(ctx, ctx, id, mode, c) == c);
      CHECK(infomorphism_preimage(ctx, ctx, id, mode, c) == c);
    }
}

TEST_CASE("inclusion infomorphisms implement restriction and bottom extension") {
  for (const Context& ctx : seeded_corpus(6, 909)) {
    const Lattice& lat = ctx.lattice();
    for (const Selector& sel : all_selectors(ctx)) {
      // rows inclusion: source keeps the selected objects, all attributes
      const Context rows = ctx.restricted_objects(sel.objects);
      Infomorphism tau{.object_map = sel.objects, .attribute_map = {}};
      tau.attribute_map.resize(static_cast<std::size_t>(ctx.attribute_count()));
      std::iota(tau.attribute_map.begin(), tau.attribute_map.end(), 0);
      CHECK_NOTHROW(verify_infomorphism(rows, ctx, tau));

      const ConceptLattice source = enumerate_concepts(rows, Mode::rst, Strategy::generators);
      std::vector<LSubset> images;
      for (const LSubset& c : source.concepts) {
        LSubset image = infomorphism_image(rows, ctx, tau, Mode::rst, c);
        CHECK(image ==
              rst_closure(ctx, extend_by_bottom(c, sel.objects, ctx.object_count(), lat)));
        CHECK(rst_closure(ctx, image) == image);
        images.push_back(std::move(image));
      }
      // the left adjoint along an object inclusion preserves hom degrees
      for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < images.size(); ++j)
          CHECK(subset_order(lat, images[i], images[j]) ==
                source.order[i * images.size() + j]);

      // its right adjoint is plain restriction and lands among source concepts
      for (const LSubset& c : enumerate_concepts(ctx, Mode::rst, Strategy::generators).concepts) {
        LSubset back = infomorphism_preimage(rows, ctx, tau, Mode::rst, c);
        CHECK(back == restrict_to(c, sel.objects));
        CHECK(rst_closure(rows, back) == back);
      }

      // columns inclusion: concepts of the column restriction are concepts of the whole
      const Context cols = ctx.restricted_attributes(sel.attributes);
      for (const LSubset& c : enumerate_concepts(cols, Mode::rst, Strategy::generators).concepts)
        CHECK(rst_closure(ctx, c) == c);
    }
  }
}

TEST_CASE("infomorphism violations carry witnesses") {
  Context ctx = crisp_identity2();
  Context sub = ctx.restricted_objects(std::vector<int>{1});
  Infomorphism bad{.object_map = {0}, .attribute_map = {0, 1}};  // maps v to u
  try {
    verify_infomorphism(sub, ctx, bad);
    FAIL("expected an infomorphism error");
  } catch (const InfomorphismError& e) {
    CHECK(e.object_witness() == 0);
    CHECK(e.attribute_witness() == 0);
  }
  CHECK_THROWS_AS(verify_infomorphism(sub, ctx, Infomorphism{{0}, {0}}), std::invalid_argument);
  Infomorphism tau{.object_map = {1}, .attribute_map = {0, 1}};
  CHECK_THROWS_AS(infomorphism_image(sub, ctx, tau, Mode::rst, {0, 0}), std::invalid_argument);

  // non-concept inputs are rejected
  Context three = chain_counterexample();
  Infomorphism ident{.object_map = {0, 1}, .attribute_map = {0}};
  CHECK(fca_closure(three, {0, 0}) != LSubset{0, 0});
  CHECK_THROWS_AS(infomorphism_image(three, three, ident, Mode::fca, {0, 0}),
                  std::invalid_argument);
}
