#include <doctest.h>

#include <mmcgen/config.hpp>
#include <mmcgen/problem.hpp>

#include <numeric>

using namespace mmcgen;

namespace
{
	double total_load(const FeaModel &m, int dir)
	{
		double s = 0;
		for (const auto &l : m.loads)
			if (l.direction == dir)
				s += l.magnitude;
		return s;
	}

	/// Load centroid along y.
	double load_y(const FeaModel &m)
	{
		double s = 0, w = 0;
		for (const auto &l : m.loads)
		{
			s += l.magnitude * m.grid.node_y(l.node);
			w += l.magnitude;
		}
		return s / w;
	}
} // namespace

TEST_CASE("cantilever labels run up the right edge")
{
	const ProblemSpec spec = ProblemSpec::cantilever();
	CHECK(spec.num_labels == 101);
	CHECK(spec.load_point(0) == Eigen::Vector2d(2.0, 0.0));
	CHECK(spec.load_point(100) == Eigen::Vector2d(2.0, 1.0));
	CHECK_THROWS(spec.load_point(101));
	const FeaModel m = spec.fea_model(0);
	CHECK(m.loads.size() == 1);
	CHECK(m.loads[0].node == m.grid.node(200, 0));
	CHECK(m.loads[0].magnitude == -1.0);
	// the whole left edge is clamped
	CHECK(m.fixed_dofs.size() == 2 * 101);
}

TEST_CASE("off-node load positions are split between neighbouring nodes")
{
	const ProblemSpec spec = ProblemSpec::cantilever(50, 25);
	for (int label = 0; label <= 100; ++label)
	{
		const FeaModel m = spec.fea_model(label);
		CHECK(total_load(m, 1) == doctest::Approx(-1.0).epsilon(1e-14));
		CHECK(total_load(m, 0) == 0.0);
		CHECK(load_y(m) == doctest::Approx(label / 100.0).epsilon(1e-12));
		CHECK(m.loads.size() <= 2);
	}
}

TEST_CASE("l-beam preset")
{
	const ProblemSpec spec = ProblemSpec::lbeam();
	CHECK(spec.num_labels == 81);
	CHECK(spec.load_point(0) == Eigen::Vector2d(1.0, 0.0));
	CHECK(spec.load_point(80).y() == doctest::Approx(0.4));
	const auto mask = spec.nondesign_mask();
	CHECK(std::accumulate(mask.begin(), mask.end(), 0) == 120 * 120);
	const FeaModel m = spec.fea_model(80);
	CHECK(m.loads.size() == 1);
	CHECK(m.fixed_dofs.size() == 2 * 81);
	for (int label = 0; label < 81; ++label)
		CHECK(spec.fea_model(label).loads.size() == 1);
}

TEST_CASE("problem JSON round trip and overrides")
{
	ProblemSpec spec = ProblemSpec::lbeam(40, 9);
	CHECK(parse_problem(serialize(spec)).load_point(3) == spec.load_point(3));
	const ProblemSpec back = parse_problem(serialize(spec));
	CHECK(serialize(back) == serialize(spec));
	CHECK(back.voids.size() == 1);

	const ProblemSpec c = parse_problem(R"({"type": "cantilever", "nx": 40, "ny": 20, "vbar": 0.4})");
	CHECK(c.grid.nx == 40);
	CHECK(c.vbar == 0.4);
	CHECK(c.tdf.min_thickness == doctest::Approx(0.025));
	CHECK(parse_problem(R"({"type": "cantilever", "nx": 40, "ny": 20, "tdf": {"min_thickness": 0.001}})").tdf.min_thickness == 0.001);

	const ProblemSpec custom = parse_problem(R"({"type": "custom", "nx": 30, "ny": 30, "lx": 1, "ly": 1,
		"supports": [[0, 0, 1, 0]], "load_line": [0, 1, 1, 1], "labels": 3, "load": [1, 0]})");
	CHECK(custom.fea_model(1).loads.front().direction == 0);
	CHECK(custom.load_point(1) == Eigen::Vector2d(0.5, 1.0));

	CHECK_THROWS(parse_problem(R"({"type": "bridge"})"));
	CHECK_THROWS(parse_problem(R"({"type": "custom", "nx": 10, "ny": 10})"));
	CHECK_THROWS(parse_problem(R"({"type": "cantilever", "vbar": 1.5})"));
	CHECK_THROWS(parse_problem(R"({"type": "cantilever", "load_line": [0, 0, 1, 1]})"));
	CHECK_THROWS(parse_problem("{not json"));
}

TEST_CASE("run configuration parsing")
{
	const RunConfig rc = parse_config(R"({
		"problem": {"type": "cantilever", "nx": 40, "ny": 20},
		"optimizer": {"max_iters": 10, "method": "projected-gradient", "vbar": 0.3},
		"initial": {"strategy": 3, "cells_x": 4, "cells_y": 2, "n_extra": 5},
		"plan": {"samples_per_label": 1, "labels": [0, 5], "mix": [1, 0, 0]},
		"load_pos": 5, "threshold": 0.4})");
	CHECK(rc.optimizer.max_iters == 10);
	CHECK(rc.optimizer.method == UpdateMethod::projected_gradient);
	CHECK(rc.problem.vbar == 0.3);
	CHECK(rc.optimizer.vbar == 0.3);
	CHECK(rc.plan.optimizer.max_iters == 10);
	CHECK(rc.initial.strategy == 3);
	CHECK(rc.plan.labels == std::vector<int>{0, 5});
	CHECK(rc.plan.threshold == 0.4);
	CHECK(build_initial(rc, 5, 1).num_components() == 4 * 3 + 2 * 5 + 2 * 8 + 5);

	const RunConfig coarse = parse_config(R"({"problem": {"type": "cantilever", "nx": 20, "ny": 10}})");
	CHECK_THROWS_AS(build_initial(coarse, 0, 1), ConfigError);

	const RunConfig defaults = parse_config("{}");
	CHECK(defaults.problem.id == "cantilever");
	CHECK(defaults.optimizer.max_iters == 150);

	CHECK_THROWS_AS(parse_config("{"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"problem": {"type": "cantilever"}, "bogus": 1})"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"optimizer": {"method": "newton"}})"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"initial": {"strategy": 4}})"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"plan": {"cells_min": 5, "cells_max": 2}})"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"plan": {"optimizer": {}}})"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"load_pos": 101})"), ConfigError);
	CHECK_THROWS_AS(parse_config(R"({"problem": {"type": "cantilever", "nx": "many"}})"), ConfigError);
}
