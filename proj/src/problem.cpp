#include "mmcgen/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace mmcgen
{
	using nlohmann::json;

	bool Segment::contains(const Eigen::Vector2d &p, double tol) const
	{
		const Eigen::Vector2d d = to - from;
		const double len2 = d.squaredNorm();
		if (len2 == 0.0)
			return (p - from).norm() <= tol;
		const double s = std::clamp((p - from).dot(d) / len2, 0.0, 1.0);
		return (from + s * d - p).norm() <= tol;
	}

	void ProblemSpec::validate() const
	{
		if (grid.nx < 1 || grid.ny < 1 || !(grid.lx > 0) || !(grid.ly > 0))
			throw Error("problem: invalid grid");
		if (num_labels < 1)
			throw Error("problem: need at least one load label");
		if (supports.empty())
			throw Error("problem: at least one support segment is required");
		if (!(vbar > 0.0 && vbar < 1.0))
			throw Error("problem: vbar must lie in (0, 1)");
		if (!load_line.vertical() && !load_line.horizontal())
			throw Error("problem: the load line must be axis-aligned");
		tdf.validate();
		binning.validate();
	}

	Eigen::Vector2d ProblemSpec::load_point(int label) const
	{
		if (label < 0 || label >= num_labels)
			throw Error("problem: load label " + std::to_string(label) + " out of range [0, " + std::to_string(num_labels - 1) + "]");
		if (num_labels == 1)
			return load_line.from;
		const double s = static_cast<double>(label) / (num_labels - 1);
		return load_line.from + s * (load_line.to - load_line.from);
	}

	std::vector<std::uint8_t> ProblemSpec::nondesign_mask() const
	{
		if (voids.empty())
			return {};
		std::vector<std::uint8_t> mask(grid.num_elements(), 0);
		for (int j = 0; j < grid.ny; ++j)
			for (int i = 0; i < grid.nx; ++i)
			{
				const double xc = (i + 0.5) * grid.hx();
				const double yc = (j + 0.5) * grid.hy();
				for (const auto &r : voids)
					if (r.contains(xc, yc))
						mask[grid.element(i, j)] = 1;
			}
		return mask;
	}

	FeaModel ProblemSpec::fea_model(int label) const
	{
		validate();
		FeaModel model;
		model.grid = grid;
		model.material = material;
		model.heaviside = heaviside;
		model.nondesign = nondesign_mask();
		model.volume_excludes_nondesign = volume_excludes_nondesign;

		const double tol = 1e-9 * std::max(grid.lx, grid.ly);
		for (int n = 0; n < grid.num_nodes(); ++n)
		{
			const Eigen::Vector2d p(grid.node_x(n), grid.node_y(n));
			if (std::any_of(supports.begin(), supports.end(), [&](const Segment &s) { return s.contains(p, tol); }))
			{
				model.fixed_dofs.push_back(2 * n);
				model.fixed_dofs.push_back(2 * n + 1);
			}
		}

		// split the point load between the two nearest nodes along the grid line
		const Eigen::Vector2d p = load_point(label);
		const double gi = p.x() / grid.hx();
		const double gj = p.y() / grid.hy();
		const double ri = std::round(gi);
		const double rj = std::round(gj);
		const bool on_i = std::abs(gi - ri) < 1e-9;
		const bool on_j = std::abs(gj - rj) < 1e-9;
		if (!on_i && !on_j)
			throw Error("problem: load point does not lie on a grid line");
		std::vector<std::pair<int, double>> shares;
		if (on_i && on_j)
		{
			shares.emplace_back(grid.node(static_cast<int>(ri), static_cast<int>(rj)), 1.0);
		}
		else if (on_i)
		{
			const int j0 = std::clamp(static_cast<int>(std::floor(gj)), 0, grid.ny - 1);
			const double w = gj - j0;
			shares.emplace_back(grid.node(static_cast<int>(ri), j0), 1.0 - w);
			shares.emplace_back(grid.node(static_cast<int>(ri), j0 + 1), w);
		}
		else
		{
			const int i0 = std::clamp(static_cast<int>(std::floor(gi)), 0, grid.nx - 1);
			const double w = gi - i0;
			shares.emplace_back(grid.node(i0, static_cast<int>(rj)), 1.0 - w);
			shares.emplace_back(grid.node(i0 + 1, static_cast<int>(rj)), w);
		}
		for (const auto &[node, w] : shares)
		{
			if (w == 0.0)
				continue;
			for (int dir = 0; dir < 2; ++dir)
				if (load(dir) != 0.0)
					model.loads.push_back({node, dir, w * load(dir)});
		}
		model.validate();
		return model;
	}

	DesignDomain ProblemSpec::domain(int label) const
	{
		DesignDomain d;
		d.lx = grid.lx;
		d.ly = grid.ly;
		d.voids = voids;
		d.supports = supports;
		d.load_points.push_back(load_point(label));
		return d;
	}

	double default_min_thickness(const Grid &grid) { return 0.5 * std::min(grid.hx(), grid.hy()); }

	ProblemSpec ProblemSpec::cantilever(int nx, int ny, int num_labels)
	{
		ProblemSpec s;
		s.id = "cantilever";
		s.grid = Grid(nx, ny, 2.0, 1.0);
		s.tdf.min_half_length = 1e-4 * 2.0;
		s.tdf.min_thickness = default_min_thickness(s.grid);
		s.supports = {{{0.0, 0.0}, {0.0, 1.0}}};
		s.load_line = {{2.0, 0.0}, {2.0, 1.0}};
		s.num_labels = num_labels;
		s.binning = ComplexityBinning::cantilever();
		return s;
	}

	ProblemSpec ProblemSpec::lbeam(int n, int num_labels)
	{
		ProblemSpec s;
		s.id = "l-beam";
		s.grid = Grid(n, n, 1.0, 1.0);
		s.tdf.min_half_length = 1e-4;
		s.tdf.min_thickness = default_min_thickness(s.grid);
		s.voids = {{0.4, 0.4, 1.0, 1.0}};
		s.supports = {{{0.0, 1.0}, {0.4, 1.0}}};
		s.load_line = {{1.0, 0.0}, {1.0, 0.4}};
		s.num_labels = num_labels;
		s.binning = ComplexityBinning::lbeam();
		return s;
	}

	namespace
	{
		Segment segment_from(const json &j)
		{
			const auto v = j.get<std::vector<double>>();
			if (v.size() != 4)
				throw Error("problem: segments are [x0, y0, x1, y1]");
			return {{v[0], v[1]}, {v[2], v[3]}};
		}

		json segment_to(const Segment &s) { return {s.from.x(), s.from.y(), s.to.x(), s.to.y()}; }
	} // namespace

	ProblemSpec parse_problem(const std::string &json_text)
	{
		try
		{
			const json j = json::parse(json_text);
			const std::string type = j.value("type", std::string("cantilever"));
			ProblemSpec s;
			const int nx = j.value("nx", type == "l-beam" ? 200 : 200);
			const int ny = j.value("ny", type == "l-beam" ? nx : 100);
			if (type == "cantilever")
				s = ProblemSpec::cantilever(nx, ny, j.value("labels", 101));
			else if (type == "l-beam")
				s = ProblemSpec::lbeam(nx, j.value("labels", 81));
			else if (type == "custom")
			{
				s = ProblemSpec::cantilever(nx, ny, j.value("labels", 101));
				s.id = "custom";
				s.supports.clear();
			}
			else
				throw Error("problem: unknown type '" + type + "'");
			if (type == "l-beam" && ny != nx)
				throw Error("problem: the l-beam grid must be square");

			if (j.contains("lx") || j.contains("ly"))
			{
				s.grid = Grid(nx, ny, j.value("lx", s.grid.lx), j.value("ly", s.grid.ly));
				if (type != "custom")
				{
					// rescale preset geometry onto the new domain
					const double sx = s.grid.lx / (type == "l-beam" ? 1.0 : 2.0);
					const double sy = s.grid.ly / 1.0;
					auto scale = [&](Eigen::Vector2d &p) { p = {p.x() * sx, p.y() * sy}; };
					for (auto &seg : s.supports)
					{
						scale(seg.from);
						scale(seg.to);
					}
					scale(s.load_line.from);
					scale(s.load_line.to);
					for (auto &r : s.voids)
						r = {r.x0 * sx, r.y0 * sy, r.x1 * sx, r.y1 * sy};
				}
			}
			s.tdf.min_half_length = 1e-4 * std::max(s.grid.lx, s.grid.ly);
			s.tdf.min_thickness = default_min_thickness(s.grid);
			if (j.contains("supports"))
			{
				s.supports.clear();
				for (const auto &seg : j.at("supports"))
					s.supports.push_back(segment_from(seg));
			}
			if (j.contains("load_line"))
				s.load_line = segment_from(j.at("load_line"));
			if (j.contains("load"))
			{
				const auto v = j.at("load").get<std::vector<double>>();
				if (v.size() != 2)
					throw Error("problem: load is [fx, fy]");
				s.load = {v[0], v[1]};
			}
			if (j.contains("voids"))
			{
				s.voids.clear();
				for (const auto &r : j.at("voids"))
				{
					const auto v = r.get<std::vector<double>>();
					if (v.size() != 4)
						throw Error("problem: voids are [x0, y0, x1, y1]");
					s.voids.push_back({v[0], v[1], v[2], v[3]});
				}
			}
			if (j.contains("material"))
			{
				s.material.youngs_modulus = j["material"].value("E", s.material.youngs_modulus);
				s.material.poisson_ratio = j["material"].value("nu", s.material.poisson_ratio);
			}
			if (j.contains("heaviside"))
			{
				s.heaviside.epsilon = j["heaviside"].value("epsilon", s.heaviside.epsilon);
				s.heaviside.alpha = j["heaviside"].value("alpha", s.heaviside.alpha);
			}
			if (j.contains("tdf"))
			{
				s.tdf.p = j["tdf"].value("p", s.tdf.p);
				s.tdf.ks_lambda = j["tdf"].value("ks_lambda", s.tdf.ks_lambda);
				s.tdf.min_thickness = j["tdf"].value("min_thickness", s.tdf.min_thickness);
			}
			s.vbar = j.value("vbar", s.vbar);
			if (j.contains("binning"))
				s.binning.upper_bounds = j.at("binning").get<std::vector<int>>();
			s.volume_excludes_nondesign = j.value("volume_excludes_nondesign", s.volume_excludes_nondesign);
			s.validate();
			return s;
		}
		catch (const json::exception &e)
		{
			throw Error(std::string("problem: ") + e.what());
		}
	}

	std::string serialize(const ProblemSpec &s)
	{
		json j;
		j["type"] = s.id;
		j["nx"] = s.grid.nx;
		j["ny"] = s.grid.ny;
		j["lx"] = s.grid.lx;
		j["ly"] = s.grid.ly;
		j["labels"] = s.num_labels;
		j["material"] = {{"E", s.material.youngs_modulus}, {"nu", s.material.poisson_ratio}};
		j["heaviside"] = {{"epsilon", s.heaviside.epsilon}, {"alpha", s.heaviside.alpha}};
		j["tdf"] = {{"p", s.tdf.p}, {"ks_lambda", s.tdf.ks_lambda}, {"min_thickness", s.tdf.min_thickness}};
		j["supports"] = json::array();
		for (const auto &seg : s.supports)
			j["supports"].push_back(segment_to(seg));
		j["load_line"] = segment_to(s.load_line);
		j["load"] = {s.load.x(), s.load.y()};
		j["voids"] = json::array();
		for (const auto &r : s.voids)
			j["voids"].push_back({r.x0, r.y0, r.x1, r.y1});
		j["vbar"] = s.vbar;
		j["binning"] = s.binning.upper_bounds;
		j["volume_excludes_nondesign"] = s.volume_excludes_nondesign;
		return j.dump(1);
	}
} // namespace mmcgen
