#include "mmcgen/ground_structure.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstring>
#include <set>

namespace mmcgen
{
	void TdfParams::validate() const
	{
		if (p < 2 || p % 2 != 0)
			throw Error("tdf: exponent p must be an even integer >= 2");
		if (!(ks_lambda > 0.0))
			throw Error("tdf: ks_lambda must be positive");
	}

	std::string_view to_string(NodeMobility m)
	{
		switch (m)
		{
		case NodeMobility::free: return "free";
		case NodeMobility::fixed_x: return "fixed-x";
		case NodeMobility::fixed_y: return "fixed-y";
		case NodeMobility::pinned: return "pinned";
		}
		return "free";
	}

	NodeMobility parse_mobility(std::string_view s)
	{
		if (s == "free")
			return NodeMobility::free;
		if (s == "fixed-x")
			return NodeMobility::fixed_x;
		if (s == "fixed-y")
			return NodeMobility::fixed_y;
		if (s == "pinned")
			return NodeMobility::pinned;
		throw Error("unknown node mobility '" + std::string(s) + "'");
	}

	void GroundStructure::validate() const
	{
		if (thickness.size() != edges.size())
			throw Error("ground structure: thickness count does not match edge count");
		if (mobility.size() != nodes.size())
			throw Error("ground structure: mobility count does not match node count");
		std::set<std::pair<int, int>> seen;
		for (const auto &[a, b] : edges)
		{
			if (a < 0 || b < 0 || a >= num_nodes() || b >= num_nodes())
				throw Error("ground structure: edge references a missing node");
			if (a == b)
				throw Error("ground structure: self-loop edge");
			if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
				throw Error("ground structure: duplicate edge");
		}
		for (double t : thickness)
			if (!(t >= 0.0))
				throw Error("ground structure: negative thickness");
	}

	Eigen::VectorXd GroundStructure::design_vector() const
	{
		Eigen::VectorXd d(num_variables());
		for (int n = 0; n < num_nodes(); ++n)
		{
			d(x_index(n)) = nodes[n].x();
			d(y_index(n)) = nodes[n].y();
		}
		for (int i = 0; i < num_components(); ++i)
			d(t_index(i)) = thickness[i];
		return d;
	}

	void GroundStructure::set_design_vector(const Eigen::Ref<const Eigen::VectorXd> &d)
	{
		if (d.size() != num_variables())
			throw Error("design vector length must be N + 2M");
		for (int n = 0; n < num_nodes(); ++n)
			nodes[n] = {d(x_index(n)), d(y_index(n))};
		for (int i = 0; i < num_components(); ++i)
			thickness[i] = d(t_index(i));
	}

	bool GroundStructure::has_edge(int a, int b) const
	{
		return std::any_of(edges.begin(), edges.end(), [&](const auto &e) {
			return (e[0] == a && e[1] == b) || (e[0] == b && e[1] == a);
		});
	}

	bool GroundStructure::add_edge(int a, int b, double t)
	{
		if (a == b || has_edge(a, b))
			return false;
		edges.push_back({a, b});
		thickness.push_back(t);
		return true;
	}

	void GroundStructure::remove_dangling_nodes()
	{
		std::vector<int> degree(nodes.size(), 0);
		for (const auto &[a, b] : edges)
		{
			++degree[a];
			++degree[b];
		}
		std::vector<int> remap(nodes.size(), -1);
		std::vector<Eigen::Vector2d> kept_nodes;
		std::vector<NodeMobility> kept_mobility;
		for (std::size_t n = 0; n < nodes.size(); ++n)
		{
			if (degree[n] == 0)
				continue;
			remap[n] = static_cast<int>(kept_nodes.size());
			kept_nodes.push_back(nodes[n]);
			kept_mobility.push_back(mobility[n]);
		}
		for (auto &e : edges)
			e = {remap[e[0]], remap[e[1]]};
		nodes = std::move(kept_nodes);
		mobility = std::move(kept_mobility);
	}

	std::uint64_t GroundStructure::hash() const
	{
		// FNV-1a over the raw bytes
		std::uint64_t h = 1469598103934665603ull;
		auto mix = [&h](const void *data, std::size_t len) {
			const auto *p = static_cast<const unsigned char *>(data);
			for (std::size_t k = 0; k < len; ++k)
			{
				h ^= p[k];
				h *= 1099511628211ull;
			}
		};
		for (const auto &n : nodes)
			mix(n.data(), 2 * sizeof(double));
		for (const auto &e : edges)
			mix(e.data(), 2 * sizeof(int));
		mix(thickness.data(), thickness.size() * sizeof(double));
		return h;
	}

	std::string serialize(const GroundStructure &gs)
	{
		nlohmann::json j;
		j["nodes"] = nlohmann::json::array();
		for (const auto &n : gs.nodes)
			j["nodes"].push_back({n.x(), n.y()});
		j["edges"] = gs.edges;
		j["thickness"] = gs.thickness;
		j["mobility"] = nlohmann::json::array();
		for (auto m : gs.mobility)
			j["mobility"].push_back(std::string(to_string(m)));
		return j.dump(1);
	}

	GroundStructure parse_ground_structure(std::string_view text)
	{
		GroundStructure gs;
		try
		{
			const auto j = nlohmann::json::parse(text);
			for (const auto &n : j.at("nodes"))
				gs.nodes.emplace_back(n.at(0).get<double>(), n.at(1).get<double>());
			gs.edges = j.at("edges").get<std::vector<std::array<int, 2>>>();
			gs.thickness = j.at("thickness").get<std::vector<double>>();
			if (j.contains("mobility"))
			{
				for (const auto &m : j.at("mobility"))
					gs.mobility.push_back(parse_mobility(m.get<std::string>()));
			}
			else
			{
				gs.mobility.assign(gs.nodes.size(), NodeMobility::free);
			}
		}
		catch (const nlohmann::json::exception &e)
		{
			throw Error(std::string("ground structure: ") + e.what());
		}
		gs.validate();
		return gs;
	}
} // namespace mmcgen
