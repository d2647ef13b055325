#pragma once

// Reference implementations shared by the unit and acceptance tests. They avoid
// the library code paths they are used to check.

#include <mmcgen/raster.hpp>
#include <mmcgen/rng.hpp>

#include <Eigen/Core>

#include <deque>
#include <utility>

namespace oracle
{
	using mmcgen::BinaryImage;

	/// Connected components of pixels equal to `value`, with 4- or 8-adjacency.
	inline int count_components(const BinaryImage &img, std::uint8_t value, bool eight)
	{
		const int rows = static_cast<int>(img.rows()), cols = static_cast<int>(img.cols());
		Eigen::ArrayXXi seen = Eigen::ArrayXXi::Zero(rows, cols);
		int count = 0;
		for (int r0 = 0; r0 < rows; ++r0)
			for (int c0 = 0; c0 < cols; ++c0)
			{
				if (img(r0, c0) != value || seen(r0, c0))
					continue;
				++count;
				std::deque<std::pair<int, int>> queue{{r0, c0}};
				seen(r0, c0) = 1;
				while (!queue.empty())
				{
					const auto [r, c] = queue.front();
					queue.pop_front();
					for (int dr = -1; dr <= 1; ++dr)
						for (int dc = -1; dc <= 1; ++dc)
						{
							if ((dr == 0 && dc == 0) || (!eight && dr != 0 && dc != 0))
								continue;
							const int rr = r + dr, cc = c + dc;
							if (rr < 0 || cc < 0 || rr >= rows || cc >= cols || seen(rr, cc) || img(rr, cc) != value)
								continue;
							seen(rr, cc) = 1;
							queue.emplace_back(rr, cc);
						}
				}
			}
		return count;
	}

	/// Holes = 8-connected void regions of the void-padded image, less the outside.
	inline int flood_fill_holes(const BinaryImage &img)
	{
		BinaryImage padded = BinaryImage::Zero(img.rows() + 2, img.cols() + 2);
		padded.block(1, 1, img.rows(), img.cols()) = img;
		return count_components(padded, 0, true) - 1;
	}

	/// True when some 2x2 window holds exactly two solid pixels on a diagonal.
	inline bool has_diagonal_nodes(const BinaryImage &img)
	{
		for (Eigen::Index r = 0; r + 1 < img.rows(); ++r)
			for (Eigen::Index c = 0; c + 1 < img.cols(); ++c)
			{
				const int a = img(r, c), b = img(r, c + 1), d = img(r + 1, c), e = img(r + 1, c + 1);
				if ((a && e && !b && !d) || (b && d && !a && !e))
					return true;
			}
		return false;
	}

	/// Random 4-connected image without diagonal nodes: a solid square with random
	/// voids punched in, diagonal contacts filled, reduced to its largest component.
	inline BinaryImage random_connected_image(mmcgen::Rng &rng, int size, double void_rate)
	{
		BinaryImage img = BinaryImage::Ones(size, size);
		for (int r = 0; r < size; ++r)
			for (int c = 0; c < size; ++c)
				if (rng.uniform01() < void_rate)
					img(r, c) = 0;
		for (bool changed = true; changed;)
		{
			changed = false;
			for (int r = 0; r + 1 < size; ++r)
				for (int c = 0; c + 1 < size; ++c)
				{
					const int a = img(r, c), b = img(r, c + 1), d = img(r + 1, c), e = img(r + 1, c + 1);
					if (a && e && !b && !d)
					{
						img(r, c + 1) = 1;
						changed = true;
					}
					else if (b && d && !a && !e)
					{
						img(r, c) = 1;
						changed = true;
					}
				}
		}
		// keep the largest 4-connected solid component
		Eigen::ArrayXXi label = Eigen::ArrayXXi::Zero(size, size);
		int next = 0, best = 0, best_size = 0;
		for (int r0 = 0; r0 < size; ++r0)
			for (int c0 = 0; c0 < size; ++c0)
			{
				if (!img(r0, c0) || label(r0, c0))
					continue;
				++next;
				int n = 0;
				std::deque<std::pair<int, int>> queue{{r0, c0}};
				label(r0, c0) = next;
				while (!queue.empty())
				{
					const auto [r, c] = queue.front();
					queue.pop_front();
					++n;
					const int dr[] = {1, -1, 0, 0}, dc[] = {0, 0, 1, -1};
					for (int k = 0; k < 4; ++k)
					{
						const int rr = r + dr[k], cc = c + dc[k];
						if (rr < 0 || cc < 0 || rr >= size || cc >= size || !img(rr, cc) || label(rr, cc))
							continue;
						label(rr, cc) = next;
						queue.emplace_back(rr, cc);
					}
				}
				if (n > best_size)
				{
					best_size = n;
					best = next;
				}
			}
		return (label == best).cast<std::uint8_t>();
	}

	/// Square annulus: solid band of width `band` around a void core.
	inline BinaryImage ring(int size, int band)
	{
		BinaryImage img = BinaryImage::Ones(size, size);
		img.block(band, band, size - 2 * band, size - 2 * band).setZero();
		return img;
	}

	/// 8x8 plane-stress stiffness of a unit square element, closed form as printed in
	/// the classic 99/88-line density codes (unit thickness).
	inline Eigen::Matrix<double, 8, 8> square_element_stiffness(double E, double nu)
	{
		const double k[8] = {0.5 - nu / 6, 0.125 + nu / 8, -0.25 - nu / 12, -0.125 + 3 * nu / 8,
		                     -0.25 + nu / 12, -0.125 - nu / 8, nu / 6, 0.125 - 3 * nu / 8};
		Eigen::Matrix<double, 8, 8> ke;
		ke << k[0], k[1], k[2], k[3], k[4], k[5], k[6], k[7],
		    k[1], k[0], k[7], k[6], k[5], k[4], k[3], k[2],
		    k[2], k[7], k[0], k[5], k[6], k[3], k[4], k[1],
		    k[3], k[6], k[5], k[0], k[7], k[2], k[1], k[4],
		    k[4], k[5], k[6], k[7], k[0], k[1], k[2], k[3],
		    k[5], k[4], k[3], k[2], k[1], k[0], k[7], k[6],
		    k[6], k[3], k[4], k[1], k[2], k[7], k[0], k[5],
		    k[7], k[2], k[1], k[4], k[3], k[6], k[5], k[0];
		return E / (1 - nu * nu) * ke;
	}
} // namespace oracle
