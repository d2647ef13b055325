// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <work-dir>

#include "fd_oracle.hpp"
#include "oracles.hpp"

#include <mmcgen/dataset.hpp>
#include <mmcgen/fea.hpp>
#include <mmcgen/geometry.hpp>
#include <mmcgen/heaviside.hpp>
#include <mmcgen/image_io.hpp>
#include <mmcgen/optimizer.hpp>
#include <mmcgen/problem.hpp>
#include <mmcgen/sensitivity.hpp>
#include <mmcgen/strategies.hpp>
#include <mmcgen/topology.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

using namespace mmcgen;
namespace fs = std::filesystem;

namespace
{
	using Clock = std::chrono::steady_clock;

	double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

	void detail(const char *fmt, ...) __attribute__((format(printf, 1, 2)));
	void detail(const char *fmt, ...)
	{
		va_list args;
		va_start(args, fmt);
		std::printf("       ");
		std::vprintf(fmt, args);
		std::printf("\n");
		va_end(args);
	}

	int failures = 0;

	void criterion(const std::string &name, const std::function<bool()> &body)
	{
		const auto t0 = Clock::now();
		bool ok = false;
		try
		{
			ok = body();
		}
		catch (const std::exception &e)
		{
			detail("exception: %s", e.what());
		}
		std::printf("%s %s (%.1f s)\n", ok ? "PASS" : "FAIL", name.c_str(), seconds_since(t0));
		std::fflush(stdout);
		if (!ok)
			++failures;
	}

	bool heaviside_exactness()
	{
		const HeavisideParams p;
		bool ok = heaviside(p.epsilon, p) == 1.0 && std::abs(heaviside(-p.epsilon, p) - p.alpha) <= 1e-12 &&
		          std::abs(heaviside(0.0, p) - (1 + p.alpha) / 2) <= 1e-12;
		for (const double x : {0.1000001, 0.2, 1.0, 1e6, -0.1000001, -0.5, -1e6})
			ok = ok && heaviside_derivative(x, p) == 0.0;
		detail("H(eps) = %.17g, H(-eps) = %.17g, H(0) = %.17g", heaviside(p.epsilon, p), heaviside(-p.epsilon, p), heaviside(0.0, p));
		return ok;
	}

	bool ks_sandwich()
	{
		const auto t0 = Clock::now();
		const Grid grid(64, 32, 2.0, 1.0);
		TdfParams tp;
		tp.min_thickness = 0.0;
		Rng rng(2);
		long checked = 0, violations = 0;
		for (int layout = 0; layout < 50; ++layout)
		{
			const int n = 1 + static_cast<int>(rng.uniform_int(1, 30));
			std::vector<Component> comps;
			for (int i = 0; i < n; ++i)
				comps.push_back({2 * rng.uniform01(), rng.uniform01(), 2 * rng.uniform01(), rng.uniform01(), 0.01 + 0.1 * rng.uniform01()});
			const auto span = std::span<const Component>(comps);
			const ScalarField ks = tdf_structure(span, grid, tp);
			const ScalarField mx = tdf_exact_max(span, grid, tp);
			const double bound = std::log(static_cast<double>(n)) / tp.ks_lambda;
			for (int k = 0; k < grid.num_nodes(); ++k, ++checked)
				if (!(ks(k) >= mx(k) && ks(k) <= mx(k) + bound))
					++violations;
		}
		const double t = seconds_since(t0);
		detail("%ld node checks, %ld violations, %.2f s", checked, violations, t);
		return violations == 0 && t < 10.0;
	}

	bool gradient_fidelity()
	{
		const auto t0 = Clock::now();
		const ProblemSpec spec = ProblemSpec::cantilever(40, 20);
		const FeaModel model = spec.fea_model(50);
		Rng rng(4040);
		const GroundStructure design = oracle::random_design(rng, 5, 2.0, 1.0, 0.04, 0.1);
		FeaSolver<double> solver(model);
		const AnalysisResult analysis = analyze_design(design, solver, spec.tdf);
		const GradientVector g = full_gradient(design, analysis, model, spec.tdf);
		const auto fd = oracle::central_differences(design, model, spec.tdf, 1e-6L);
		int n_obj = 0, n_vol = 0;
		const double e_obj = oracle::max_relative_error(g.d_obj, fd.d_obj, 1e-8, &n_obj);
		const double e_vol = oracle::max_relative_error(g.d_vol, fd.d_vol, 1e-8, &n_vol);
		const double t = seconds_since(t0);
		detail("compliance: max rel error %.3e over %d entries; volume: %.3e over %d entries; %.1f s", e_obj, n_obj, e_vol, n_vol, t);
		return e_obj < 1e-3 && e_vol < 1e-3 && n_obj > 0 && t < 120.0;
	}

	OptimizationHistory desk_run(int cells)
	{
		const ProblemSpec spec = ProblemSpec::cantilever(80, 40);
		OptimizationConfig config;
		config.max_iters = 100;
		config.vbar = 0.35;
		config.tdf = spec.tdf;
		return run_optimization(strategy1({cells, cells}, spec.domain(50)), spec.fea_model(50), config);
	}

	bool optimization_sanity()
	{
		const auto t0 = Clock::now();
		const OptimizationHistory a = desk_run(3);
		const double t = seconds_since(t0);
		const OptimizationHistory b = desk_run(3);
		if (a.error)
			detail("run failed: %s", a.error->c_str());
		const double g = a.volume_fraction.back() - 0.35;
		const bool identical = a.compliance == b.compliance && a.volume_fraction == b.volume_fraction && a.final_design == b.final_design;
		detail("C: %.4f -> %.4f, g = %.2e, rerun identical: %s, %.1f s per run", a.compliance.front(), a.compliance.back(), g,
		       identical ? "yes" : "no", t);
		return !a.error && a.compliance.back() < a.compliance.front() && g <= 1e-2 && identical && t < 300.0;
	}

	bool strategy1_trend()
	{
		std::map<int, double> c;
		for (const int n : {1, 3, 5, 7})
		{
			const OptimizationHistory h = desk_run(n);
			c[n] = h.error ? NAN : h.compliance.back();
			detail("%dx%d array: final compliance %.3f", n, n, c[n]);
		}
		return c[5] <= c[1];
	}

	bool genus_oracle()
	{
		const auto t0 = Clock::now();
		Rng rng(48);
		int agree = 0, total = 0;
		for (int i = 0; i < 500; ++i)
		{
			const BinaryImage img = oracle::random_connected_image(rng, 48, 0.05 + 0.4 * rng.uniform01());
			if (oracle::has_diagonal_nodes(img) || oracle::count_components(img, 1, false) != 1)
				continue;
			++total;
			const int formula = betti0(img) - euler_number(img).euler;
			agree += formula == oracle::flood_fill_holes(img);
		}
		const bool fixtures = topology_summary(oracle::ring(48, 8)).genus == 1 && topology_summary(BinaryImage::Ones(48, 48)).genus == 0;
		const double t = seconds_since(t0);
		detail("%d of %d images agree, fixtures %s, %.2f s", agree, total, fixtures ? "ok" : "wrong", t);
		return total == 500 && agree == total && fixtures && t < 30.0;
	}

	bool binning()
	{
		const ComplexityBinning b = ComplexityBinning::cantilever();
		const int genus[] = {0, 5, 6, 10, 11, 25, 26};
		const int level[] = {1, 1, 2, 2, 3, 6, 6};
		bool ok = true;
		for (int i = 0; i < 7; ++i)
			ok = ok && complexity_level(genus[i], b) == level[i];
		return ok;
	}

	bool mnd_fixtures()
	{
		GrayImage binary = GrayImage::Zero(40, 40);
		binary.leftCols(17).setOnes();
		GrayImage half = GrayImage::Ones(40, 40);
		half.bottomRows(20).setConstant(0.5);
		detail("binary %.17g, uniform 0.5 %.17g, half 0.5 %.17g", m_nd(binary), m_nd(GrayImage::Constant(40, 40, 0.5)), m_nd(half));
		return m_nd(binary) == 0.0 && m_nd(GrayImage::Constant(40, 40, 0.5)) == 100.0 && m_nd(half) == 50.0;
	}

	struct Corpus
	{
		ProblemSpec spec = ProblemSpec::cantilever(50, 25);
		DatasetPlan plan;
		GenerateResult result;
		fs::path dir;
	};

	bool dataset_round_trip(Corpus &corpus, const fs::path &work)
	{
		corpus.dir = work / "desk";
		corpus.plan.samples_per_label = 2;
		const int jobs = std::max(1u, std::thread::hardware_concurrency());
		GenerateOptions options;
		options.jobs = jobs;
		auto t0 = Clock::now();
		corpus.result = generate_samples(corpus.spec, corpus.plan, 2024, corpus.dir, options);
		const double t_gen = seconds_since(t0);
		const DatasetManifest &m = corpus.result.manifest;
		detail("%zu samples, %zu rejected attempts, %.1f s with %d job(s)", m.samples.size(), corpus.result.failures.size(), t_gen, jobs);

		int topo_mismatch = 0, within = 0;
		double worst = 0.0, mean = 0.0;
		for (const Sample &s : m.samples)
		{
			const BinaryImage bin = threshold_image(dequantize(read_pgm(corpus.dir / s.raw)), corpus.plan.threshold);
			const int holes = oracle::flood_fill_holes(bin);
			const int b0 = oracle::count_components(bin, 1, false);
			const int g = b0 - 1 + holes;
			if (g != s.genus || complexity_level(g, corpus.spec.binning) != s.complexity_level)
				++topo_mismatch;

			const GrayImage image = resize_from_square(dequantize(read_png(corpus.dir / s.image)), s.source_ny, s.source_nx, corpus.plan.resize);
			const AnalysisResult a = reanalyze_image(image, corpus.spec.fea_model(s.load_pos), corpus.plan.threshold);
			const double rel = (a.compliance - s.compliance) / s.compliance;
			within += std::abs(rel) <= 0.02;
			worst = std::max(worst, std::abs(rel));
			mean += rel / static_cast<double>(m.samples.size());
		}
		detail("genus/level mismatches: %d", topo_mismatch);
		detail("reanalysis within 2%%: %d of %zu (mean %+.2f%%, worst %.1f%%)", within, m.samples.size(), 100 * mean, 100 * worst);

		GenerateOptions other;
		other.jobs = jobs == 1 ? 2 : 1;
		t0 = Clock::now();
		const GenerateResult rerun = generate_samples(corpus.spec, corpus.plan, 2024, work / "desk_rerun", other);
		const bool same_hash = rerun.manifest_hash == corpus.result.manifest_hash && !rerun.manifest_hash.empty();
		detail("rerun with %d job(s): hash %s (%.1f s)", other.jobs, same_hash ? "identical" : "DIFFERENT", seconds_since(t0));

		// runtime is measured on this machine's cores; the budget is 30 min on 8
		const bool fast = t_gen * std::min(jobs, 8) / 8.0 < 1800.0;
		return m.samples.size() == 202 && topo_mismatch == 0 && within == static_cast<int>(m.samples.size()) && same_hash && fast;
	}

	bool level_trend(const Corpus &corpus)
	{
		const DatasetManifest &m = corpus.result.manifest;
		if (m.samples.empty())
			return false;
		const DatasetSummary s = summarize(m, corpus.spec.num_labels);
		for (const LevelStats &l : s.levels)
			detail("level %d: %d samples, mean compliance %.3f, mean genus %.2f", l.level, l.count, l.mean_compliance, l.mean_genus);
		detail("Spearman(level, mean compliance) = %.3f over %zu populated level(s)", s.spearman_level_compliance, s.levels.size());
		std::vector<double> genus, compliance;
		for (const Sample &x : m.samples)
		{
			genus.push_back(x.genus);
			compliance.push_back(x.compliance);
		}
		detail("per-sample Spearman(genus, compliance) = %.3f (informational)", spearman(genus, compliance));
		return s.spearman_level_compliance <= -0.3;
	}
} // namespace

int main(int argc, char **argv)
{
	const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "mmcgen_acceptance";
	fs::remove_all(work);
	fs::create_directories(work);

	criterion("heaviside exactness", heaviside_exactness);
	criterion("K-S sandwich", ks_sandwich);
	criterion("gradient fidelity", gradient_fidelity);
	criterion("optimization sanity at 80x40", optimization_sanity);
	criterion("base-cell array trend (5x5 <= 1x1)", strategy1_trend);
	criterion("genus oracle equivalence", genus_oracle);
	criterion("complexity binning", binning);
	criterion("M_nd fixtures", mnd_fixtures);
	Corpus corpus;
	criterion("dataset round trip", [&] { return dataset_round_trip(corpus, work); });
	criterion("level/compliance trend", [&] { return level_trend(corpus); });

	std::printf("%d criterion(s) failed\n", failures);
	return failures == 0 ? 0 : 1;
}
