#include <doctest.h>

#include <mmcgen/optimizer.hpp>
#include <mmcgen/problem.hpp>
#include <mmcgen/strategies.hpp>

#include <sstream>

using namespace mmcgen;

namespace
{
	struct Setup
	{
		ProblemSpec spec = ProblemSpec::cantilever(40, 20);
		FeaModel model = spec.fea_model(50);
		GroundStructure initial = strategy1({3, 3}, spec.domain(50));
		OptimizationConfig config;

		Setup()
		{
			config.max_iters = 20;
			config.tdf = spec.tdf;
		}
	};

	std::size_t first_feasible(const OptimizationHistory &h, double vbar)
	{
		std::size_t k = 0;
		while (k < h.size() && h.volume_fraction[k] > vbar + 1e-2)
			++k;
		return k;
	}
} // namespace

TEST_CASE("a short run lowers compliance and records every iterate")
{
	Setup s;
	const OptimizationHistory h = run_optimization(s.initial, s.model, s.config);
	REQUIRE_FALSE(h.error);
	CHECK(h.size() == 21);
	// the initial array is heavier than vbar, so compare against the first feasible iterate
	const std::size_t k = first_feasible(h, s.config.vbar);
	REQUIRE(k + 1 < h.size());
	CHECK(h.compliance.back() < h.compliance[k]);
	CHECK(h.volume_fraction.front() > s.config.vbar);
	CHECK(h.max_change.front() == 0.0);
	CHECK(h.final_analysis.compliance == h.compliance.back());
	CHECK(h.final_design.edges == s.initial.edges);

	std::ostringstream csv;
	write_history_csv(csv, h);
	const std::string text = csv.str();
	CHECK(text.rfind("iteration,compliance,volume_fraction,max_change\n", 0) == 0);
	CHECK(std::count(text.begin(), text.end(), '\n') == 22);
}

TEST_CASE("runs are bit-identical and independent of the seed field")
{
	Setup s;
	const OptimizationHistory a = run_optimization(s.initial, s.model, s.config);
	s.config.seed = 99;
	const OptimizationHistory b = run_optimization(s.initial, s.model, s.config);
	CHECK(a.compliance == b.compliance);
	CHECK(a.final_design == b.final_design);
}

TEST_CASE("frozen thickness and fixed coordinates stay bit-identical")
{
	Setup s;
	s.config.freeze_thickness = true;
	const OptimizationHistory h = run_optimization(s.initial, s.model, s.config);
	REQUIRE_FALSE(h.error);
	CHECK(h.final_design.thickness == s.initial.thickness);
	bool moved = false;
	for (int n = 0; n < s.initial.num_nodes(); ++n)
	{
		const auto m = s.initial.mobility[n];
		const auto &p0 = s.initial.nodes[n];
		const auto &p1 = h.final_design.nodes[n];
		if (m == NodeMobility::pinned || m == NodeMobility::fixed_x)
			CHECK(p1.x() == p0.x());
		if (m == NodeMobility::pinned || m == NodeMobility::fixed_y)
			CHECK(p1.y() == p0.y());
		moved = moved || p1 != p0;
	}
	CHECK(moved);
}

TEST_CASE("design updater bounds follow node mobility and the domain")
{
	Setup s;
	DesignUpdater u(s.initial, s.model.grid, s.config);
	for (int n = 0; n < s.initial.num_nodes(); ++n)
	{
		CHECK(u.lower()(s.initial.x_index(n)) >= 0.0);
		CHECK(u.upper()(s.initial.x_index(n)) <= 2.0);
		if (s.initial.mobility[n] == NodeMobility::fixed_x)
			CHECK(u.lower()(s.initial.x_index(n)) == u.upper()(s.initial.x_index(n)));
	}
	GradientVector g{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)};
	CHECK_THROWS(u.update(s.initial, g, 0.0));
}

TEST_CASE("projected-gradient fallback also reduces compliance")
{
	Setup s;
	s.config.method = UpdateMethod::projected_gradient;
	s.config.max_iters = 40;
	const OptimizationHistory h = run_optimization(s.initial, s.model, s.config);
	REQUIRE_FALSE(h.error);
	const std::size_t k = first_feasible(h, s.config.vbar);
	REQUIRE(k + 1 < h.size());
	CHECK(h.compliance.back() < h.compliance[k]);
}

TEST_CASE("tolerance stops the run early")
{
	Setup s;
	s.config.max_iters = 200;
	s.config.tolerance = 0.5;
	const OptimizationHistory h = run_optimization(s.initial, s.model, s.config);
	CHECK(h.converged);
	CHECK(h.size() < 201);
}

TEST_CASE("invalid configurations throw")
{
	Setup s;
	s.config.vbar = 1.5;
	CHECK_THROWS(run_optimization(s.initial, s.model, s.config));
	s.config.vbar = 0.35;
	s.config.max_iters = -1;
	CHECK_THROWS(run_optimization(s.initial, s.model, s.config));
}
