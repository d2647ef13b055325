#include "mmcgen/dataset.hpp"

#include "mmcgen/config.hpp"
#include "mmcgen/image_io.hpp"
#include "mmcgen/rng.hpp"
#include "mmcgen/strategies.hpp"
#include "mmcgen/topology.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace mmcgen
{
	using nlohmann::json;
	namespace fs = std::filesystem;

	// ---------------------------------------------------------------- resize

	namespace
	{
		struct SquareLayout
		{
			int row_factor = 1, col_factor = 1, row_offset = 0;
		};

		SquareLayout square_layout(int rows, int cols, ResizeMode mode)
		{
			const auto fail = [&] {
				throw UnsupportedDimsError("resize: a " + std::to_string(cols) + "x" + std::to_string(rows) + " grid cannot be mapped onto " +
				                           std::to_string(kImageSize) + "x" + std::to_string(kImageSize) + " pixels by integer factors");
			};
			if (rows < 1 || cols < 1 || kImageSize % cols != 0)
				fail();
			SquareLayout l;
			l.col_factor = kImageSize / cols;
			if (mode == ResizeMode::stretch)
			{
				if (kImageSize % rows != 0)
					fail();
				l.row_factor = kImageSize / rows;
			}
			else
			{
				l.row_factor = l.col_factor;
				if (rows * l.row_factor > kImageSize)
					fail();
				l.row_offset = (kImageSize - rows * l.row_factor) / 2;
			}
			return l;
		}
	} // namespace

	bool resizable(int rows, int cols, ResizeMode mode)
	{
		try
		{
			square_layout(rows, cols, mode);
			return true;
		}
		catch (const UnsupportedDimsError &)
		{
			return false;
		}
	}

	GrayImage resize_to_square(const GrayImage &raster, ResizeMode mode)
	{
		const SquareLayout l = square_layout(static_cast<int>(raster.rows()), static_cast<int>(raster.cols()), mode);
		const GrayImage up = upscale_nearest(raster, l.row_factor, l.col_factor);
		if (up.rows() == kImageSize)
			return up;
		GrayImage out = GrayImage::Zero(kImageSize, kImageSize);
		out.middleRows(l.row_offset, up.rows()) = up;
		return out;
	}

	GrayImage resize_from_square(const GrayImage &image, int rows, int cols, ResizeMode mode)
	{
		if (image.rows() != kImageSize || image.cols() != kImageSize)
			throw UnsupportedDimsError("resize: expected a " + std::to_string(kImageSize) + "x" + std::to_string(kImageSize) + " image");
		const SquareLayout l = square_layout(rows, cols, mode);
		return block_average(image.middleRows(l.row_offset, rows * l.row_factor), rows, cols);
	}

	std::string to_string(ResizeMode m) { return m == ResizeMode::stretch ? "stretch" : "pad"; }

	// ---------------------------------------------------------------- plan

	void DatasetPlan::validate() const
	{
		if (samples_per_label < 1)
			throw Error("plan: samples_per_label must be >= 1");
		if (mix.s1 < 0 || mix.s2 < 0 || mix.s3 < 0 || mix.s1 + mix.s2 + mix.s3 <= 0)
			throw Error("plan: strategy mix weights must be >= 0 with a positive sum");
		if (cells_min < 1 || cells_max < cells_min)
			throw Error("plan: need 1 <= cells_min <= cells_max");
		if (n_extra < 0)
			throw Error("plan: n_extra must be >= 0");
		if (pre_iters_max < 1 || pre_iters_max > 40)
			throw Error("plan: pre_iters_max must lie in [1, 40]");
		if (max_attempts < 1)
			throw Error("plan: max_attempts must be >= 1");
		if (!(threshold > 0.0 && threshold < 1.0))
			throw Error("plan: threshold must lie in (0, 1)");
		optimizer.validate();
	}

	std::string serialize(const DatasetPlan &p)
	{
		json j;
		j["samples_per_label"] = p.samples_per_label;
		j["labels"] = p.labels;
		j["mix"] = {p.mix.s1, p.mix.s2, p.mix.s3};
		j["cells_min"] = p.cells_min;
		j["cells_max"] = p.cells_max;
		j["n_extra"] = p.n_extra;
		j["pre_iters_max"] = p.pre_iters_max;
		j["max_attempts"] = p.max_attempts;
		j["t0"] = p.t0;
		j["threshold"] = p.threshold;
		j["resize"] = to_string(p.resize);
		j["optimizer"] = json::parse(serialize(p.optimizer));
		return j.dump();
	}

	DatasetPlan parse_plan(const std::string &json_text)
	{
		try
		{
			const json j = json::parse(json_text);
			if (!j.is_object())
				throw ConfigError("plan must be an object");
			static const std::set<std::string> keys = {"samples_per_label", "labels", "mix", "cells_min", "cells_max", "n_extra",
			                                           "pre_iters_max", "max_attempts", "t0", "threshold", "resize", "optimizer"};
			for (const auto &[key, value] : j.items())
				if (!keys.count(key))
					throw ConfigError("unknown key \"" + key + "\" in plan");
			DatasetPlan p;
			p.samples_per_label = j.value("samples_per_label", p.samples_per_label);
			if (j.contains("labels"))
				p.labels = j.at("labels").get<std::vector<int>>();
			if (j.contains("mix"))
			{
				const auto m = j.at("mix").get<std::vector<double>>();
				if (m.size() != 3)
					throw ConfigError("plan.mix must hold three weights");
				p.mix = {m[0], m[1], m[2]};
			}
			p.cells_min = j.value("cells_min", p.cells_min);
			p.cells_max = j.value("cells_max", p.cells_max);
			p.n_extra = j.value("n_extra", p.n_extra);
			p.pre_iters_max = j.value("pre_iters_max", p.pre_iters_max);
			p.max_attempts = j.value("max_attempts", p.max_attempts);
			p.t0 = j.value("t0", p.t0);
			p.threshold = j.value("threshold", p.threshold);
			const std::string resize = j.value("resize", std::string("stretch"));
			if (resize == "stretch")
				p.resize = ResizeMode::stretch;
			else if (resize == "pad")
				p.resize = ResizeMode::pad;
			else
				throw ConfigError("plan.resize must be \"stretch\" or \"pad\"");
			if (j.contains("optimizer"))
				p.optimizer = parse_optimizer(j.at("optimizer").dump());
			p.validate();
			return p;
		}
		catch (const json::exception &e)
		{
			throw ConfigError(std::string("plan: ") + e.what());
		}
		catch (const ConfigError &)
		{
			throw;
		}
		catch (const Error &e)
		{
			throw ConfigError(e.what());
		}
	}

	// ---------------------------------------------------------------- manifest

	std::string serialize(const Sample &s)
	{
		json j;
		j["id"] = s.id;
		j["image"] = s.image;
		j["raw"] = s.raw;
		j["load_pos"] = s.load_pos;
		j["genus"] = s.genus;
		j["complexity_level"] = s.complexity_level;
		j["betti0"] = s.betti0;
		j["compliance"] = s.compliance;
		j["volume_fraction"] = s.volume_fraction;
		j["m_nd"] = s.m_nd;
		j["strategy"] = s.strategy;
		j["seed"] = s.seed;
		j["source_nx"] = s.source_nx;
		j["source_ny"] = s.source_ny;
		j["cells_x"] = s.cells_x;
		j["cells_y"] = s.cells_y;
		j["pre_iters"] = s.pre_iters;
		j["n_extra"] = s.n_extra;
		j["attempt"] = s.attempt;
		j["iterations"] = s.iterations;
		return j.dump();
	}

	Sample parse_sample(const std::string &line)
	{
		const json j = json::parse(line);
		Sample s;
		s.id = j.at("id").get<std::string>();
		s.image = j.at("image").get<std::string>();
		s.raw = j.at("raw").get<std::string>();
		s.load_pos = j.at("load_pos").get<int>();
		s.genus = j.at("genus").get<int>();
		s.complexity_level = j.at("complexity_level").get<int>();
		s.betti0 = j.at("betti0").get<int>();
		s.compliance = j.at("compliance").get<double>();
		s.volume_fraction = j.at("volume_fraction").get<double>();
		s.m_nd = j.at("m_nd").get<double>();
		s.strategy = j.at("strategy").get<int>();
		s.seed = j.at("seed").get<std::uint64_t>();
		s.source_nx = j.at("source_nx").get<int>();
		s.source_ny = j.at("source_ny").get<int>();
		s.cells_x = j.value("cells_x", 0);
		s.cells_y = j.value("cells_y", 0);
		s.pre_iters = j.value("pre_iters", 0);
		s.n_extra = j.value("n_extra", 0);
		s.attempt = j.value("attempt", 0);
		s.iterations = j.value("iterations", 0);
		return s;
	}

	void DatasetManifest::validate() const
	{
		std::set<std::string> ids;
		std::map<int, int> counts;
		for (const auto &s : samples)
		{
			if (!ids.insert(s.id).second)
				throw Error("manifest: duplicate sample id " + s.id);
			++counts[s.load_pos];
		}
		if (counts != per_label_counts)
			throw Error("manifest: per-label counts disagree with the samples");
	}

	std::string serialize_jsonl(const DatasetManifest &m)
	{
		std::vector<const Sample *> order;
		for (const auto &s : m.samples)
			order.push_back(&s);
		std::sort(order.begin(), order.end(), [](const Sample *a, const Sample *b) {
			return std::tie(a->load_pos, a->id) < std::tie(b->load_pos, b->id);
		});
		std::string out;
		for (const auto *s : order)
			out += serialize(*s) + "\n";
		return out;
	}

	DatasetManifest parse_manifest(const std::string &jsonl, const std::string &spec_json)
	{
		DatasetManifest m;
		m.spec_json = spec_json;
		if (!spec_json.empty())
			m.config_hash = sha256_hex(spec_json);
		std::istringstream in(jsonl);
		std::string line;
		int lineno = 0;
		while (std::getline(in, line))
		{
			++lineno;
			if (line.empty())
				continue;
			try
			{
				m.samples.push_back(parse_sample(line));
			}
			catch (const json::exception &e)
			{
				throw Error("manifest line " + std::to_string(lineno) + ": " + e.what());
			}
			++m.per_label_counts[m.samples.back().load_pos];
		}
		m.validate();
		return m;
	}

	namespace
	{
		std::string read_file(const fs::path &p)
		{
			std::ifstream in(p, std::ios::binary);
			if (!in)
				throw Error("cannot read " + p.string());
			std::stringstream ss;
			ss << in.rdbuf();
			return ss.str();
		}

		void write_atomic(const fs::path &p, const std::string &content)
		{
			const fs::path tmp = p.string() + ".tmp";
			{
				std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
				if (!out)
					throw Error("cannot write " + tmp.string());
				out << content;
				if (!out.flush())
					throw Error("write failed for " + tmp.string());
			}
			fs::rename(tmp, p);
		}

		std::string sample_id(int label, int slot)
		{
			char buf[32];
			std::snprintf(buf, sizeof buf, "l%03d_s%03d", label, slot);
			return buf;
		}

		fs::path part_path(const fs::path &out, int label)
		{
			char buf[32];
			std::snprintf(buf, sizeof buf, "label_%03d.jsonl", label);
			return out / "parts" / buf;
		}
	} // namespace

	DatasetManifest load_manifest(const fs::path &dir)
	{
		const fs::path spec = dir / "spec.json";
		return parse_manifest(read_file(dir / "manifest.jsonl"), fs::exists(spec) ? read_file(spec) : std::string());
	}

	std::string sha256_hex(const std::string &bytes)
	{
		unsigned char digest[EVP_MAX_MD_SIZE];
		unsigned int len = 0;
		if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
			throw Error("sha256 failed");
		static const char *hex = "0123456789abcdef";
		std::string out;
		for (unsigned int i = 0; i < len; ++i)
		{
			out += hex[digest[i] >> 4];
			out += hex[digest[i] & 15];
		}
		return out;
	}

	// ---------------------------------------------------------------- generation

	bool load_attached(const BinaryImage &binary, const ProblemSpec &spec, int label)
	{
		const Grid &g = spec.grid;
		const Eigen::Vector2d p = spec.load_point(label);
		const double tol = 1e-9;
		for (int j = 0; j < g.ny; ++j)
		{
			if (p.y() < j * g.hy() - tol * g.hy() || p.y() > (j + 1) * g.hy() + tol * g.hy())
				continue;
			for (int i = 0; i < g.nx; ++i)
			{
				if (p.x() < i * g.hx() - tol * g.hx() || p.x() > (i + 1) * g.hx() + tol * g.hx())
					continue;
				if (binary(g.ny - 1 - j, i))
					return true;
			}
		}
		return false;
	}

	SampleOutcome run_sample(const ProblemSpec &spec, const DatasetPlan &plan, int label, int slot, int attempt, std::uint64_t seed)
	{
		SampleOutcome out;
		Sample &s = out.sample;
		s.id = sample_id(label, slot);
		s.image = "images/" + s.id + ".png";
		s.raw = "raw/" + s.id + ".pgm";
		s.load_pos = label;
		s.seed = seed;
		s.attempt = attempt;
		s.source_nx = spec.grid.nx;
		s.source_ny = spec.grid.ny;

		Rng rng(seed);
		const double total = plan.mix.s1 + plan.mix.s2 + plan.mix.s3;
		const double u = rng.uniform01() * total;
		s.strategy = u < plan.mix.s1 ? 1 : (u < plan.mix.s1 + plan.mix.s2 ? 2 : 3);
		s.cells_x = static_cast<int>(rng.uniform_int(plan.cells_min, plan.cells_max));
		s.cells_y = static_cast<int>(rng.uniform_int(plan.cells_min, plan.cells_max));
		const BaseCellSpec cells{s.cells_x, s.cells_y, plan.t0};

		const DesignDomain domain = spec.domain(label);
		const FeaModel model = spec.fea_model(label);
		OptimizationConfig oc = plan.optimizer;
		oc.vbar = spec.vbar;
		oc.tdf = spec.tdf;
		oc.seed = seed;

		OptimizationHistory history;
		try
		{
			GroundStructure initial;
			if (s.strategy == 1)
				initial = strategy1(cells, domain);
			else if (s.strategy == 2)
			{
				s.pre_iters = static_cast<int>(rng.uniform_int(1, plan.pre_iters_max));
				initial = strategy2(cells, domain, model, oc, s.pre_iters);
			}
			else
			{
				s.n_extra = std::min(plan.n_extra, available_extra_edges(strategy1(cells, domain)));
				initial = strategy3(cells, domain, s.n_extra, rng.next());
			}
			history = run_optimization(initial, model, oc);
		}
		catch (const Error &e)
		{
			out.reason = e.what();
			return out;
		}
		if (history.error)
		{
			out.reason = "optimization failed: " + *history.error;
			return out;
		}
		s.iterations = static_cast<int>(history.size()) - 1;

		const AnalysisResult &a = history.final_analysis;
		out.raw = quantize(to_raster(a.densities, spec.grid));
		const GrayImage gray = dequantize(out.raw);
		const BinaryImage binary = threshold_image(gray, plan.threshold);
		const TopologySummary topo = topology_summary(binary, spec.binning);
		s.genus = topo.genus;
		s.betti0 = topo.betti0;
		s.complexity_level = topo.complexity_level;
		s.compliance = a.compliance;
		s.volume_fraction = a.volume_fraction;
		s.m_nd = m_nd(gray);

		if (topo.betti0 != 1)
			out.reason = "disconnected raster (betti0 = " + std::to_string(topo.betti0) + ")";
		else if (a.volume_fraction > spec.vbar + 1e-2)
			out.reason = "volume violation (" + std::to_string(a.volume_fraction) + " > " + std::to_string(spec.vbar) + " + 1e-2)";
		else if (!load_attached(binary, spec, label))
			out.reason = "no solid pixel at the load point";
		else if (!std::isfinite(a.compliance))
			out.reason = "non-finite compliance";
		if (!out.reason.empty())
			return out;

		out.image = quantize(resize_to_square(gray, plan.resize));
		out.accepted = true;
		return out;
	}

	GenerateResult generate_samples(const ProblemSpec &spec, const DatasetPlan &plan, std::uint64_t master_seed, const fs::path &out,
	                                const GenerateOptions &options)
	{
		spec.validate();
		plan.validate();
		if (!resizable(spec.grid.ny, spec.grid.nx, plan.resize))
			resize_to_square(GrayImage::Zero(spec.grid.ny, spec.grid.nx), plan.resize); // throws with the diagnostic

		const double t0 = BaseCellSpec{1, 1, plan.t0}.thickness(spec.domain(0));
		if (t0 <= spec.tdf.min_thickness)
			throw Error("plan: initial thickness " + std::to_string(t0) + " does not exceed the elimination threshold " +
			            std::to_string(spec.tdf.min_thickness) + "; raise plan.t0");

		std::vector<int> labels = plan.labels;
		if (labels.empty())
		{
			labels.resize(spec.num_labels);
			std::iota(labels.begin(), labels.end(), 0);
		}
		for (const int l : labels)
			if (l < 0 || l >= spec.num_labels)
				throw Error("plan: label " + std::to_string(l) + " out of range");

		json snapshot;
		snapshot["format"] = "mmcgen-dataset-1";
		snapshot["image_size"] = kImageSize;
		snapshot["master_seed"] = master_seed;
		snapshot["problem"] = json::parse(serialize(spec));
		snapshot["plan"] = json::parse(serialize(plan));
		const std::string spec_json = snapshot.dump(1) + "\n";

		fs::create_directories(out / "images");
		fs::create_directories(out / "raw");
		fs::create_directories(out / "parts");
		const fs::path spec_path = out / "spec.json";
		if (options.resume && fs::exists(spec_path) && read_file(spec_path) != spec_json)
			throw Error("resume: " + spec_path.string() + " was written with a different configuration or seed");
		write_atomic(spec_path, spec_json);
		if (!options.resume)
			for (const int l : labels)
				fs::remove(part_path(out, l));
		fs::remove(out / "manifest.jsonl");
		fs::remove(out / "manifest.sha256");

		GenerateResult result;
		std::map<int, std::vector<Sample>> by_label;
		std::vector<int> pending;
		for (const int l : labels)
		{
			const fs::path part = part_path(out, l);
			if (options.resume && fs::exists(part))
			{
				by_label[l] = parse_manifest(read_file(part)).samples;
				++result.labels_reused;
			}
			else
				pending.push_back(l);
		}
		if (options.stop_after > 0 && static_cast<int>(pending.size()) > options.stop_after)
			pending.resize(options.stop_after);

		std::mutex mutex;
		std::atomic<std::size_t> next{0};
		std::vector<std::string> empty_labels;
		auto worker = [&] {
			for (std::size_t k; (k = next.fetch_add(1)) < pending.size();)
			{
				const int label = pending[k];
				std::vector<Sample> accepted;
				std::vector<std::string> failures;
				for (int slot = 0; slot < plan.samples_per_label; ++slot)
					for (int attempt = 0; attempt < plan.max_attempts; ++attempt)
					{
						const std::uint64_t seed = derive_seed(master_seed, {static_cast<std::uint64_t>(label), static_cast<std::uint64_t>(slot),
						                                                     static_cast<std::uint64_t>(attempt)});
						SampleOutcome o = run_sample(spec, plan, label, slot, attempt, seed);
						if (!o.accepted)
						{
							failures.push_back(o.sample.id + " attempt " + std::to_string(attempt) + ": " + o.reason);
							continue;
						}
						write_png(out / o.sample.image, o.image);
						write_pgm(out / o.sample.raw, o.raw);
						accepted.push_back(std::move(o.sample));
						break;
					}
				if (!accepted.empty())
				{
					DatasetManifest part;
					part.samples = accepted;
					write_atomic(part_path(out, label), serialize_jsonl(part));
				}
				std::lock_guard lock(mutex);
				if (accepted.empty())
				{
					std::string msg = "label " + std::to_string(label) + " produced no accepted sample:";
					for (const auto &f : failures)
						msg += "\n  " + f;
					empty_labels.push_back(msg);
				}
				result.failures.insert(result.failures.end(), failures.begin(), failures.end());
				by_label[label] = std::move(accepted);
				++result.labels_generated;
				if (options.progress)
					options.progress(label, static_cast<int>(by_label[label].size()), static_cast<int>(failures.size()));
			}
		};
		const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(pending.size())));
		if (jobs == 1)
			worker();
		else
		{
			std::vector<std::thread> threads;
			for (int t = 0; t < jobs; ++t)
				threads.emplace_back(worker);
			for (auto &t : threads)
				t.join();
		}
		if (!empty_labels.empty())
		{
			std::sort(empty_labels.begin(), empty_labels.end());
			std::string msg;
			for (const auto &m : empty_labels)
				msg += m + "\n";
			throw Error(msg);
		}
		std::sort(result.failures.begin(), result.failures.end());
		{
			std::string log;
			for (const auto &f : result.failures)
				log += f + "\n";
			write_atomic(out / "rejected.log", log);
		}

		DatasetManifest &m = result.manifest;
		m.spec_json = spec_json;
		m.config_hash = sha256_hex(spec_json);
		for (auto &[label, samples] : by_label)
			for (auto &s : samples)
			{
				++m.per_label_counts[label];
				m.samples.push_back(s);
			}
		m.validate();
		result.complete = by_label.size() == labels.size();
		if (result.complete)
		{
			const std::string text = serialize_jsonl(m);
			write_atomic(out / "manifest.jsonl", text);
			result.manifest_hash = sha256_hex(text);
			write_atomic(out / "manifest.sha256", result.manifest_hash + "  manifest.jsonl\n");
		}
		return result;
	}

	// ---------------------------------------------------------------- summary

	double spearman(const std::vector<double> &x, const std::vector<double> &y)
	{
		if (x.size() != y.size())
			throw Error("spearman: length mismatch");
		const std::size_t n = x.size();
		if (n < 2)
			return std::numeric_limits<double>::quiet_NaN();
		auto ranks = [n](const std::vector<double> &v) {
			std::vector<std::size_t> idx(n);
			std::iota(idx.begin(), idx.end(), 0);
			std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
			std::vector<double> r(n);
			for (std::size_t i = 0; i < n;)
			{
				std::size_t k = i;
				while (k + 1 < n && v[idx[k + 1]] == v[idx[i]])
					++k;
				const double avg = 0.5 * static_cast<double>(i + k) + 1.0;
				for (std::size_t t = i; t <= k; ++t)
					r[idx[t]] = avg;
				i = k + 1;
			}
			return Eigen::Map<const Eigen::ArrayXd>(r.data(), n).eval();
		};
		const Eigen::ArrayXd rx = ranks(x) - (n + 1) / 2.0;
		const Eigen::ArrayXd ry = ranks(y) - (n + 1) / 2.0;
		const double den = std::sqrt((rx * rx).sum() * (ry * ry).sum());
		if (den == 0.0)
			return std::numeric_limits<double>::quiet_NaN();
		return (rx * ry).sum() / den;
	}

	DatasetSummary summarize(const DatasetManifest &m, int num_labels)
	{
		DatasetSummary s;
		s.total = static_cast<int>(m.samples.size());
		std::map<int, LevelStats> levels;
		for (const auto &sample : m.samples)
		{
			LevelStats &l = levels[sample.complexity_level];
			l.level = sample.complexity_level;
			++l.count;
			l.mean_compliance += sample.compliance;
			l.mean_genus += sample.genus;
			++s.per_label_counts[sample.load_pos];
		}
		std::vector<double> lv, comp;
		for (auto &[level, l] : levels)
		{
			l.mean_compliance /= l.count;
			l.mean_genus /= l.count;
			s.levels.push_back(l);
			lv.push_back(level);
			comp.push_back(l.mean_compliance);
		}
		for (int label = 0; label < num_labels; ++label)
			if (!s.per_label_counts.count(label))
				s.empty_labels.push_back(label);
		s.spearman_level_compliance = spearman(lv, comp);
		return s;
	}

	std::string to_json(const DatasetSummary &s, const DatasetManifest &m)
	{
		json j;
		j["total"] = s.total;
		j["spearman_level_compliance"] = std::isfinite(s.spearman_level_compliance) ? json(s.spearman_level_compliance) : json(nullptr);
		j["levels"] = json::array();
		for (const auto &l : s.levels)
			j["levels"].push_back({{"level", l.level}, {"count", l.count}, {"mean_compliance", l.mean_compliance}, {"mean_genus", l.mean_genus}});
		j["empty_labels"] = s.empty_labels;
		std::map<int, json> points;
		for (const auto &sample : m.samples)
			points[sample.load_pos].push_back(
			    {{"id", sample.id}, {"genus", sample.genus}, {"level", sample.complexity_level}, {"compliance", sample.compliance}});
		j["labels"] = json::array();
		for (auto &[label, pts] : points)
			j["labels"].push_back({{"load_pos", label}, {"count", pts.size()}, {"samples", pts}});
		return j.dump(1);
	}
} // namespace mmcgen
