#pragma once

#include "mmcgen/raster.hpp"

#include <filesystem>

namespace mmcgen
{
	/// 8-bit grayscale PNG. Colour or 16-bit inputs are converted to 8-bit gray on read.
	void write_png(const std::filesystem::path &path, const ByteImage &image);
	ByteImage read_png(const std::filesystem::path &path);

	/// Binary (P5) PGM with maxval 255.
	void write_pgm(const std::filesystem::path &path, const ByteImage &image);
	ByteImage read_pgm(const std::filesystem::path &path);

	/// Dispatches on the extension (.png or .pgm) and returns values in [0, 1].
	GrayImage read_gray_image(const std::filesystem::path &path);
} // namespace mmcgen
