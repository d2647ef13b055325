#include <doctest.h>

#include <mmcgen/strategies.hpp>

#include <set>

using namespace mmcgen;

namespace
{
	DesignDomain plain_domain()
	{
		DesignDomain d;
		d.lx = 2.0;
		d.ly = 1.0;
		return d;
	}

	std::set<std::pair<int, int>> edge_set(const GroundStructure &gs)
	{
		std::set<std::pair<int, int>> s;
		for (const auto &[a, b] : gs.edges)
			s.insert({std::min(a, b), std::max(a, b)});
		return s;
	}
} // namespace

TEST_CASE("base-cell arrays have the expected node and edge counts")
{
	const GroundStructure one = strategy1({1, 1}, plain_domain());
	CHECK(one.num_nodes() == 4);
	CHECK(one.num_components() == 6);
	const GroundStructure two = strategy1({2, 1}, plain_domain());
	CHECK(two.num_nodes() == 6);
	CHECK(two.num_components() == 11);
	for (int cx = 1; cx <= 7; ++cx)
		for (int cy = 1; cy <= 7; ++cy)
		{
			const GroundStructure gs = strategy1({cx, cy}, plain_domain());
			CHECK(gs.num_nodes() == (cx + 1) * (cy + 1));
			// horizontal + vertical sides + two diagonals per cell
			CHECK(gs.num_components() == cx * (cy + 1) + cy * (cx + 1) + 2 * cx * cy);
			CHECK(edge_set(gs).size() == gs.edges.size());
		}
}

TEST_CASE("default thickness and explicit t0")
{
	const GroundStructure gs = strategy1({2, 2}, plain_domain());
	for (double t : gs.thickness)
		CHECK(t == doctest::Approx(0.03));
	const GroundStructure thick = strategy1({2, 2, 0.07}, plain_domain());
	CHECK(thick.thickness.front() == 0.07);
	CHECK_THROWS(strategy1({0, 2}, plain_domain()));
}

TEST_CASE("supports and loads set node mobility")
{
	const ProblemSpec spec = ProblemSpec::cantilever();
	const GroundStructure gs = strategy1({3, 3}, spec.domain(37));
	int fixed_x = 0, pinned = 0;
	for (int n = 0; n < gs.num_nodes(); ++n)
	{
		if (gs.mobility[n] == NodeMobility::fixed_x)
		{
			++fixed_x;
			CHECK(gs.nodes[n].x() == 0.0);
		}
		if (gs.mobility[n] == NodeMobility::pinned)
		{
			++pinned;
			CHECK(gs.nodes[n].x() == 2.0);
			CHECK(gs.nodes[n].y() == doctest::Approx(0.37));
		}
	}
	CHECK(fixed_x == 4);
	CHECK(pinned == 1);
}

TEST_CASE("l-beam layouts drop cells overlapping the void block")
{
	const ProblemSpec spec = ProblemSpec::lbeam();
	const GroundStructure gs = strategy1({5, 5}, spec.domain(0));
	// 25 cells minus the 3x3 block in the upper right
	CHECK(gs.num_components() == 110 - 36);
	CHECK(gs.num_nodes() == 36 - 9);
	for (const auto &p : gs.nodes)
		CHECK_FALSE(spec.voids.front().contains(p.x(), p.y()));
	int fixed_y = 0;
	for (auto m : gs.mobility)
		fixed_y += m == NodeMobility::fixed_y;
	CHECK(fixed_y == 3);
	CHECK_NOTHROW(gs.validate());
}

TEST_CASE("strategy 3 adds exactly n_extra new components")
{
	const GroundStructure base = strategy1({5, 5}, plain_domain());
	const GroundStructure gs = strategy3({5, 5}, plain_domain(), 20, 7);
	CHECK(gs.num_components() == base.num_components() + 20);
	CHECK(edge_set(gs).size() == gs.edges.size());
	for (const auto &[a, b] : gs.edges)
		CHECK(a != b);
	CHECK(strategy3({5, 5}, plain_domain(), 20, 7) == gs);
	CHECK(strategy3({5, 5}, plain_domain(), 20, 8) != gs);
	CHECK(strategy3({5, 5}, plain_domain(), 0, 7) == base);

	const GroundStructure small = strategy1({1, 1}, plain_domain());
	CHECK(available_extra_edges(small) == 0);
	CHECK_THROWS(strategy3({1, 1}, plain_domain(), 1, 0));
	const GroundStructure full = strategy3({2, 1}, plain_domain(), available_extra_edges(strategy1({2, 1}, plain_domain())), 3);
	CHECK(full.num_components() == 15);
}

TEST_CASE("strategy 2 moves nodes only")
{
	const ProblemSpec spec = ProblemSpec::cantilever(40, 20);
	const FeaModel model = spec.fea_model(50);
	OptimizationConfig config;
	config.tdf = spec.tdf;
	const GroundStructure base = strategy1({3, 3}, spec.domain(50));

	CHECK_THROWS(strategy2({3, 3}, spec.domain(50), model, config, 0));
	CHECK_THROWS(strategy2({3, 3}, spec.domain(50), model, config, 41));

	const GroundStructure gs = strategy2({3, 3}, spec.domain(50), model, config, 5);
	CHECK(gs.edges == base.edges);
	CHECK(gs.thickness == base.thickness);
	CHECK(gs.mobility == base.mobility);
	CHECK(gs.nodes != base.nodes);

	const GroundStructure kept = strategy2({3, 3}, spec.domain(50), model, config, 5, false);
	CHECK(kept.nodes == gs.nodes);

	// seeds pick the pre-iteration count uniformly in 1..40
	std::set<int> drawn;
	for (std::uint64_t seed = 0; seed < 400; ++seed)
	{
		const int k = draw_pre_iters(seed);
		CHECK(k >= 1);
		CHECK(k <= 40);
		drawn.insert(k);
	}
	CHECK(drawn.size() == 40);

	std::uint64_t s1 = 1, s2 = 2;
	while (draw_pre_iters(s2) == draw_pre_iters(s1))
		++s2;
	const GroundStructure a = strategy2({3, 3}, spec.domain(50), model, config, s1);
	const GroundStructure b = strategy2({3, 3}, spec.domain(50), model, config, s2);
	CHECK(a.nodes != b.nodes);
	CHECK(strategy2({3, 3}, spec.domain(50), model, config, s1) == a);
}
