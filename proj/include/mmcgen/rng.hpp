#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmcgen
{
	/// SplitMix64 finalizer.
	inline std::uint64_t mix64(std::uint64_t x)
	{
		x += 0x9e3779b97f4a7c15ULL;
		x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
		x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
		return x ^ (x >> 31);
	}

	/// Independent stream seed for (master, k0, k1, ...).
	inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
	{
		std::uint64_t s = mix64(master);
		for (const auto k : keys)
			s = mix64(s ^ mix64(k + 0x632be59bd9b4e019ULL));
		return s;
	}

	/// mt19937_64 with distribution code of our own, so draws do not depend on the
	/// standard library implementation.
	class Rng
	{
	public:
		explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

		std::uint64_t next() { return engine_(); }

		/// Uniform integer in [lo, hi].
		std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
		{
			const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
			if (span == 0)
				return static_cast<std::int64_t>(next());
			const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
			std::uint64_t r;
			do
				r = next();
			while (r >= limit);
			return lo + static_cast<std::int64_t>(r % span);
		}

		/// Uniform double in [0, 1).
		double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

	private:
		std::mt19937_64 engine_;
	};
} // namespace mmcgen
