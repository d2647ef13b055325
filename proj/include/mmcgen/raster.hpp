#pragma once

#include "mmcgen/grid.hpp"

#include <Eigen/Core>

#include <cstdint>

namespace mmcgen
{
	/// 0/1 raster (1 = solid). Row 0 is the top of the domain.
	using BinaryImage = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

	/// Grayscale raster with values in [0, 1]. Row 0 is the top of the domain.
	using GrayImage = Eigen::ArrayXXd;

	/// 8-bit raster as stored on disk.
	using ByteImage = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

	/// Elemental field -> ny x nx raster (element row j = 0 is the bottom row of pixels).
	GrayImage to_raster(const ScalarField &elemental, const Grid &grid);

	/// Inverse of to_raster.
	ScalarField from_raster(const GrayImage &image, const Grid &grid);

	/// Pixels strictly above `threshold` become 1.
	BinaryImage threshold_image(const GrayImage &image, double threshold);

	/// Nearest-neighbour upscale by integer factors (each pixel becomes a
	/// row_factor x col_factor block).
	GrayImage upscale_nearest(const GrayImage &image, int row_factor, int col_factor);

	/// Block-average downscale to rows x cols; the source dimensions must be integer
	/// multiples of the target. Exact inverse of upscale_nearest.
	GrayImage block_average(const GrayImage &image, int rows, int cols);

	/// Round to the nearest of 256 levels.
	ByteImage quantize(const GrayImage &image);
	GrayImage dequantize(const ByteImage &image);
} // namespace mmcgen
