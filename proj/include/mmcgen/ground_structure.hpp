#pragma once

#include "mmcgen/geometry.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mmcgen
{
	enum class NodeMobility : std::uint8_t
	{
		free,
		fixed_x, ///< x coordinate frozen, y may slide
		fixed_y, ///< y coordinate frozen, x may slide
		pinned
	};

	std::string_view to_string(NodeMobility m);
	NodeMobility parse_mobility(std::string_view s);

	/// Driven nodes connected by straight components. The node coordinates and the
	/// component half-widths form the design vector d = (d_x, d_y, d_t), of length
	/// N + 2M for M nodes and N components.
	struct GroundStructure
	{
		std::vector<Eigen::Vector2d> nodes;
		std::vector<std::array<int, 2>> edges;
		std::vector<double> thickness;
		std::vector<NodeMobility> mobility;

		int num_nodes() const { return static_cast<int>(nodes.size()); }
		int num_components() const { return static_cast<int>(edges.size()); }
		int num_variables() const { return num_components() + 2 * num_nodes(); }

		int x_index(int node) const { return node; }
		int y_index(int node) const { return num_nodes() + node; }
		int t_index(int component) const { return 2 * num_nodes() + component; }

		/// Throws if indices are out of range, edges repeat, or sizes disagree.
		void validate() const;

		Eigen::VectorXd design_vector() const;
		void set_design_vector(const Eigen::Ref<const Eigen::VectorXd> &d);

		/// Components evaluated at an arbitrary design vector (any scalar type).
		template <typename Scalar>
		std::vector<ComponentGeom<Scalar>> components(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> &d) const
		{
			std::vector<ComponentGeom<Scalar>> out(edges.size());
			for (std::size_t i = 0; i < edges.size(); ++i)
			{
				const auto [a, b] = edges[i];
				out[i] = {d(x_index(a)), d(y_index(a)), d(x_index(b)), d(y_index(b)), d(t_index(static_cast<int>(i)))};
			}
			return out;
		}

		std::vector<Component> components() const { return components<double>(design_vector()); }

		/// Adds an edge unless it is a self-loop or already present; returns whether it was added.
		bool add_edge(int a, int b, double t);
		bool has_edge(int a, int b) const;

		/// Removes nodes with no incident edge, renumbering the rest.
		void remove_dangling_nodes();

		/// Hash of connectivity and design vector bits.
		std::uint64_t hash() const;

		bool operator==(const GroundStructure &) const = default;
	};

	/// JSON document: {"nodes": [[x, y], ...], "edges": [[a, b], ...],
	/// "thickness": [...], "mobility": ["free" | "fixed-x" | "fixed-y" | "pinned", ...]}.
	std::string serialize(const GroundStructure &gs);
	GroundStructure parse_ground_structure(std::string_view text);
} // namespace mmcgen
