#include <doctest.h>

#include "oracles.hpp"

#include <mmcgen/topology.hpp>

using namespace mmcgen;

TEST_CASE("solid and ring fixtures")
{
	const TopologySummary solid = topology_summary(BinaryImage::Ones(10, 10));
	CHECK(solid.genus == 0);
	CHECK(solid.euler == 1);
	CHECK(solid.betti0 == 1);
	const TopologySummary ring = topology_summary(oracle::ring(12, 3));
	CHECK(ring.genus == 1);
	CHECK(ring.euler == 0);
	CHECK(ring.diagonal_nodes == 0);
	CHECK_FALSE(ring.fallback);
	CHECK(topology_summary(BinaryImage::Zero(5, 5)).betti0 == 0);
	CHECK(topology_summary(BinaryImage::Zero(5, 5)).genus == 0);
}

TEST_CASE("two-hole plate and two separate blocks")
{
	BinaryImage img = BinaryImage::Ones(7, 11);
	img(3, 3) = 0;
	img(3, 7) = 0;
	const TopologySummary s = topology_summary(img);
	CHECK(s.genus == 2);
	CHECK(s.euler == -1);

	BinaryImage two = BinaryImage::Zero(6, 9);
	two.block(1, 1, 3, 3).setOnes();
	two.block(1, 5, 3, 3).setOnes();
	CHECK(betti0(two) == 2);
	CHECK(topology_summary(two).genus == 0);
	CHECK(euler_number(two).euler == 2);
}

TEST_CASE("neighbourhood formula agrees with flood fill on random diagonal-free images")
{
	Rng rng(77);
	for (int trial = 0; trial < 100; ++trial)
	{
		const BinaryImage img = oracle::random_connected_image(rng, 24, 0.1 + 0.35 * rng.uniform01());
		REQUIRE_FALSE(oracle::has_diagonal_nodes(img));
		REQUIRE(oracle::count_components(img, 1, false) == 1);
		const EulerCounts counts = euler_number(img);
		CHECK(counts.diagonal == 0);
		CHECK((counts.a1 - counts.a3) % 4 == 0);
		CHECK(1 - counts.euler == oracle::flood_fill_holes(img));
		CHECK(betti0(img) == 1);
		CHECK(count_holes(img) == oracle::flood_fill_holes(img));
	}
}

TEST_CASE("diagonal contacts fall back to hole counting")
{
	// two solid pixels touching at a corner enclose nothing but form a diagonal node
	BinaryImage img = BinaryImage::Zero(4, 4);
	img(1, 1) = 1;
	img(2, 2) = 1;
	const TopologySummary s = topology_summary(img);
	CHECK(s.diagonal_nodes == 1);
	CHECK(s.betti0 == 2);
	CHECK(s.genus == 0);

	// a diamond of diagonal steps: with 8-connected void its interior leaks out
	BinaryImage diamond = BinaryImage::Zero(5, 5);
	diamond(0, 2) = diamond(1, 1) = diamond(1, 3) = diamond(2, 0) = diamond(2, 4) = diamond(3, 1) = diamond(3, 3) = diamond(4, 2) = 1;
	const TopologySummary d = topology_summary(diamond);
	CHECK(d.diagonal_nodes > 0);
	CHECK(d.genus == oracle::flood_fill_holes(diamond));
	CHECK(d.genus == 0);
}

TEST_CASE("complexity binning")
{
	const ComplexityBinning c = ComplexityBinning::cantilever();
	CHECK(c.num_levels() == 6);
	const std::pair<int, int> cases[] = {{0, 1}, {5, 1}, {6, 2}, {10, 2}, {11, 3}, {15, 3}, {16, 4}, {20, 4}, {21, 5}, {24, 5}, {25, 6}, {26, 6}, {100, 6}};
	for (const auto &[g, level] : cases)
		CHECK(complexity_level(g, c) == level);
	const ComplexityBinning l = ComplexityBinning::lbeam();
	CHECK(l.num_levels() == 3);
	CHECK(complexity_level(6, l) == 1);
	CHECK(complexity_level(7, l) == 2);
	CHECK(complexity_level(13, l) == 3);
	CHECK_THROWS(complexity_level(-1, c));
	CHECK_THROWS(ComplexityBinning{{3, 3}}.validate());
}

TEST_CASE("M_nd fixtures")
{
	CHECK(m_nd(GrayImage::Zero(8, 8)) == 0.0);
	CHECK(m_nd(GrayImage::Ones(8, 8)) == 0.0);
	CHECK(m_nd(GrayImage::Constant(8, 8, 0.5)) == 100.0);
	GrayImage half = GrayImage::Ones(8, 8);
	half.topRows(4).setConstant(0.5);
	CHECK(m_nd(half) == 50.0);
	CHECK_THROWS(m_nd(GrayImage::Constant(2, 2, 1.5)));
	CHECK_THROWS(m_nd(GrayImage()));
}
