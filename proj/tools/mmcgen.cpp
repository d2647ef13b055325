#include <mmcgen/config.hpp>
#include <mmcgen/dataset.hpp>
#include <mmcgen/image_io.hpp>
#include <mmcgen/optimizer.hpp>
#include <mmcgen/topology.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace mmcgen;
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{
	enum ExitCode
	{
		ok = 0,
		runtime_error = 1,
		config_error = 2,
		unsupported_dims = 3,
		metrics_failed = 4,
		stopped_early = 5
	};

	std::string read_text(const fs::path &p)
	{
		std::ifstream in(p, std::ios::binary);
		if (!in)
			throw ConfigError("cannot read " + p.string());
		std::stringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}

	void write_text(const fs::path &p, const std::string &s)
	{
		std::ofstream out(p, std::ios::binary);
		if (!out)
			throw Error("cannot write " + p.string());
		out << s;
	}

	/// Run config, or the problem/plan snapshot of a dataset's spec.json.
	RunConfig load_any_config(const std::string &path)
	{
		const std::string text = read_text(path);
		json j;
		try
		{
			j = json::parse(text);
		}
		catch (const json::exception &e)
		{
			throw ConfigError(path + ": " + e.what());
		}
		if (!j.is_object() || !j.contains("format"))
			return parse_config(text);
		json rc;
		rc["problem"] = j.at("problem");
		json plan = j.at("plan");
		rc["optimizer"] = plan.at("optimizer");
		rc["threshold"] = plan.at("threshold");
		plan.erase("optimizer");
		rc["plan"] = plan;
		return parse_config(rc.dump());
	}

	ComplexityBinning parse_binning(const std::string &name)
	{
		if (name == "cantilever")
			return ComplexityBinning::cantilever();
		if (name == "l-beam")
			return ComplexityBinning::lbeam();
		throw ConfigError("binning must be cantilever or l-beam");
	}

	struct Options
	{
		std::string config;
		std::uint64_t seed = 0;
		std::string out = ".";
		int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
		std::optional<double> threshold;
		bool resume = false;
		bool dataset_format = false;
		int stop_after = 0;
		std::optional<int> load_pos;
		std::vector<std::string> inputs;
		std::string reference;
		std::string binning = "cantilever";
	};

	int cmd_optimize(const Options &o)
	{
		RunConfig rc = load_any_config(o.config);
		const int label = o.load_pos.value_or(rc.load_pos);
		const double threshold = o.threshold.value_or(rc.threshold);
		if (o.dataset_format && !resizable(rc.problem.grid.ny, rc.problem.grid.nx, rc.plan.resize))
			resize_to_square(GrayImage::Zero(rc.problem.grid.ny, rc.problem.grid.nx), rc.plan.resize);
		rc.optimizer.seed = o.seed;

		const fs::path out(o.out);
		fs::create_directories(out);
		const FeaModel model = rc.problem.fea_model(label);
		const GroundStructure initial = build_initial(rc, label, o.seed);
		write_text(out / "initial.json", serialize(initial));

		const auto start = std::chrono::steady_clock::now();
		const OptimizationHistory history = run_optimization(initial, model, rc.optimizer);
		const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		{
			std::ofstream csv(out / "history.csv");
			write_history_csv(csv, history);
		}
		if (history.error)
		{
			std::cerr << "optimize: " << *history.error << '\n';
			return runtime_error;
		}
		write_text(out / "design.json", serialize(history.final_design));

		const ByteImage raw = quantize(to_raster(history.final_analysis.densities, rc.problem.grid));
		const GrayImage gray = dequantize(raw);
		write_pgm(out / "density.pgm", raw);
		write_png(out / "density.png", o.dataset_format ? quantize(resize_to_square(gray, rc.plan.resize)) : raw);
		const TopologySummary topo = topology_summary(threshold_image(gray, threshold), rc.problem.binning);

		json m;
		m["compliance"] = history.final_analysis.compliance;
		m["initial_compliance"] = history.compliance.front();
		m["volume_fraction"] = history.final_analysis.volume_fraction;
		m["constraint"] = history.final_analysis.volume_fraction - rc.optimizer.vbar;
		m["iterations"] = history.size() - 1;
		m["converged"] = history.converged;
		m["genus"] = topo.genus;
		m["betti0"] = topo.betti0;
		m["complexity_level"] = topo.complexity_level;
		m["m_nd"] = m_nd(gray);
		m["load_pos"] = label;
		m["seconds"] = seconds;
		write_text(out / "metrics.json", m.dump(1) + "\n");
		std::cout << m.dump() << '\n';
		return ok;
	}

	int cmd_dataset(const Options &o)
	{
		const RunConfig rc = load_any_config(o.config);
		DatasetPlan plan = rc.plan;
		if (o.threshold)
			plan.threshold = *o.threshold;
		GenerateOptions opts;
		opts.jobs = o.jobs;
		opts.resume = o.resume;
		opts.stop_after = o.stop_after;
		opts.progress = [&](int label, int accepted, int failed) {
			std::cerr << "label " << label << ": " << accepted << " accepted, " << failed << " rejected\n";
		};
		const GenerateResult r = generate_samples(rc.problem, plan, o.seed, o.out, opts);
		std::cerr << r.labels_generated << " labels generated, " << r.labels_reused << " reused, " << r.manifest.samples.size() << " samples\n";
		if (!r.complete)
		{
			std::cerr << "dataset: stopped before all labels were generated; rerun with --resume\n";
			return stopped_early;
		}
		std::cout << r.manifest_hash << '\n';
		return ok;
	}

	int cmd_metrics(const Options &o)
	{
		const ComplexityBinning binning = parse_binning(o.binning);
		const double threshold = o.threshold.value_or(0.5);
		std::vector<fs::path> files;
		for (const auto &in : o.inputs)
		{
			if (fs::is_directory(in))
			{
				std::vector<fs::path> found;
				for (const auto &entry : fs::directory_iterator(in))
				{
					const auto ext = entry.path().extension();
					if (entry.is_regular_file() && (ext == ".png" || ext == ".pgm"))
						found.push_back(entry.path());
				}
				std::sort(found.begin(), found.end());
				files.insert(files.end(), found.begin(), found.end());
			}
			else
				files.emplace_back(in);
		}
		int failed = 0;
		for (const auto &f : files)
		{
			json line;
			line["file"] = f.string();
			try
			{
				const GrayImage img = read_gray_image(f);
				const TopologySummary t = topology_summary(threshold_image(img, threshold), binning);
				line["width"] = img.cols();
				line["height"] = img.rows();
				line["genus"] = t.genus;
				line["complexity_level"] = t.complexity_level;
				line["euler"] = t.euler;
				line["betti0"] = t.betti0;
				line["diagonal_nodes"] = t.diagonal_nodes;
				line["m_nd"] = m_nd(img);
			}
			catch (const std::exception &e)
			{
				line["error"] = e.what();
				++failed;
			}
			std::cout << line.dump() << '\n';
		}
		return failed ? metrics_failed : ok;
	}

	json reanalyze_one(const fs::path &path, const RunConfig &rc, int label, double threshold)
	{
		GrayImage img = read_gray_image(path);
		const Grid &g = rc.problem.grid;
		if (img.rows() == kImageSize && img.cols() == kImageSize && !(g.nx == kImageSize && g.ny == kImageSize))
			img = resize_from_square(img, g.ny, g.nx, rc.plan.resize);
		const FeaModel model = rc.problem.fea_model(label);
		const AnalysisResult a = reanalyze_image(img, model, threshold);
		const BinaryImage binary = threshold_image(img.rows() == g.ny ? img : block_average(img, g.ny, g.nx), threshold);
		json r;
		r["file"] = path.string();
		r["compliance"] = a.compliance;
		r["volume_fraction"] = a.volume_fraction;
		r["infeasible"] = binary.cast<int>().sum() == 0 || !load_attached(binary, rc.problem, label) ||
		                  a.volume_fraction > rc.problem.vbar + 1e-2;
		return r;
	}

	int cmd_reanalyze(const Options &o)
	{
		const RunConfig rc = load_any_config(o.config);
		const int label = o.load_pos.value_or(rc.load_pos);
		const double threshold = o.threshold.value_or(rc.threshold);
		json r = reanalyze_one(o.inputs.at(0), rc, label, threshold);
		r["load_pos"] = label;
		if (!o.reference.empty())
		{
			const json ref = reanalyze_one(o.reference, rc, label, threshold);
			r["reference"] = ref;
			r["relative_difference"] = (r["compliance"].get<double>() - ref["compliance"].get<double>()) / ref["compliance"].get<double>();
		}
		std::cout << r.dump() << '\n';
		return ok;
	}

	int cmd_summarize(const Options &o)
	{
		const fs::path dir = o.inputs.at(0);
		const DatasetManifest m = load_manifest(dir);
		int num_labels = 0;
		if (!m.spec_json.empty())
			num_labels = json::parse(m.spec_json).at("problem").at("labels").get<int>();
		const DatasetSummary s = summarize(m, num_labels);
		for (const int l : s.empty_labels)
			std::cerr << "warning: label " << l << " has no samples\n";
		const std::string text = to_json(s, m);
		if (o.out != ".")
			write_text(o.out, text + "\n");
		std::cout << text << '\n';
		return ok;
	}
} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"MMC topology optimization, dataset generation and topology metrics"};
	app.require_subcommand(1);
	Options o;

	auto *opt = app.add_subcommand("optimize", "run one optimization");
	opt->add_option("--config", o.config, "configuration file")->required();
	opt->add_option("--seed", o.seed, "run seed");
	opt->add_option("--out", o.out, "output directory");
	opt->add_option("--load-pos", o.load_pos, "load label (overrides the config)");
	opt->add_option("--threshold", o.threshold, "binarization threshold");
	opt->add_flag("--dataset-format", o.dataset_format, "write the raster as a 200x200 dataset image");
	opt->add_option("--jobs", o.jobs, "ignored; a single run is sequential");

	auto *ds = app.add_subcommand("dataset", "generate a labelled dataset");
	ds->add_option("--config", o.config, "configuration file")->required();
	ds->add_option("--seed", o.seed, "master seed");
	ds->add_option("--out", o.out, "dataset directory")->required();
	ds->add_option("--jobs", o.jobs, "worker threads");
	ds->add_option("--threshold", o.threshold, "binarization threshold");
	ds->add_flag("--resume", o.resume, "reuse labels completed by an earlier call");
	ds->add_option("--stop-after", o.stop_after, "stop after generating this many labels");

	auto *met = app.add_subcommand("metrics", "genus, complexity level and M_nd of images");
	met->add_option("inputs", o.inputs, "images or directories")->required();
	met->add_option("--threshold", o.threshold, "binarization threshold");
	met->add_option("--binning", o.binning, "cantilever or l-beam")->check(CLI::IsMember({"cantilever", "l-beam"}));

	auto *re = app.add_subcommand("reanalyze", "finite element analysis of a thresholded image");
	re->add_option("image", o.inputs, "image to analyse")->required()->expected(1);
	re->add_option("--config", o.config, "configuration file or dataset spec.json")->required();
	re->add_option("--load-pos", o.load_pos, "load label");
	re->add_option("--threshold", o.threshold, "binarization threshold");
	re->add_option("--reference", o.reference, "reference image analysed under the same load");

	auto *sum = app.add_subcommand("summarize", "per-level distribution report of a dataset");
	sum->add_option("dataset", o.inputs, "dataset directory")->required()->expected(1);
	sum->add_option("--out", o.out, "write the report to this file");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		const int code = app.exit(e);
		return code == 0 ? ok : config_error;
	}

	try
	{
		if (*opt)
			return cmd_optimize(o);
		if (*ds)
			return cmd_dataset(o);
		if (*met)
			return cmd_metrics(o);
		if (*re)
			return cmd_reanalyze(o);
		return cmd_summarize(o);
	}
	catch (const ConfigError &e)
	{
		std::cerr << "config error: " << e.what() << '\n';
		return config_error;
	}
	catch (const UnsupportedDimsError &e)
	{
		std::cerr << e.what() << '\n';
		return unsupported_dims;
	}
	catch (const std::exception &e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return runtime_error;
	}
}
