#include "mmcgen/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mmcgen
{
	using nlohmann::json;

	namespace
	{
		UpdateMethod parse_method(const std::string &s)
		{
			if (s == "mma")
				return UpdateMethod::mma;
			if (s == "projected-gradient")
				return UpdateMethod::projected_gradient;
			throw ConfigError("optimizer.method must be \"mma\" or \"projected-gradient\", got \"" + s + "\"");
		}

		void check_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed)
		{
			if (!j.is_object())
				throw ConfigError(where + " must be an object");
			for (const auto &[key, value] : j.items())
				if (std::find_if(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; }) == allowed.end())
					throw ConfigError("unknown key \"" + key + "\" in " + where);
		}
	} // namespace

	std::string serialize(const OptimizationConfig &c)
	{
		json j;
		j["vbar"] = c.vbar;
		j["max_iters"] = c.max_iters;
		j["move_xy"] = c.move_limit_xy;
		j["move_t"] = c.move_limit_t;
		j["t_max"] = c.t_max;
		j["freeze_thickness"] = c.freeze_thickness;
		j["tolerance"] = c.tolerance;
		j["method"] = c.method == UpdateMethod::mma ? "mma" : "projected-gradient";
		return j.dump();
	}

	OptimizationConfig parse_optimizer(const std::string &json_text, OptimizationConfig c)
	{
		try
		{
			const json j = json::parse(json_text);
			check_keys(j, "optimizer", {"vbar", "max_iters", "move_xy", "move_t", "t_max", "freeze_thickness", "tolerance", "method"});
			c.vbar = j.value("vbar", c.vbar);
			c.max_iters = j.value("max_iters", c.max_iters);
			c.move_limit_xy = j.value("move_xy", c.move_limit_xy);
			c.move_limit_t = j.value("move_t", c.move_limit_t);
			c.t_max = j.value("t_max", c.t_max);
			c.freeze_thickness = j.value("freeze_thickness", c.freeze_thickness);
			c.tolerance = j.value("tolerance", c.tolerance);
			if (j.contains("method"))
				c.method = parse_method(j.at("method").get<std::string>());
			c.validate();
			return c;
		}
		catch (const json::exception &e)
		{
			throw ConfigError(std::string("optimizer: ") + e.what());
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

	RunConfig parse_config(const std::string &json_text)
	{
		json j;
		try
		{
			j = json::parse(json_text);
		}
		catch (const json::exception &e)
		{
			throw ConfigError(std::string("config is not valid JSON: ") + e.what());
		}
		try
		{
			check_keys(j, "config", {"problem", "optimizer", "initial", "plan", "load_pos", "threshold"});
			RunConfig rc;
			if (j.contains("problem"))
				rc.problem = parse_problem(j.at("problem").dump());
			if (j.contains("optimizer") && j["optimizer"].contains("vbar"))
				rc.problem.vbar = j["optimizer"]["vbar"].get<double>();
			rc.optimizer.vbar = rc.problem.vbar;
			if (j.contains("optimizer"))
				rc.optimizer = parse_optimizer(j.at("optimizer").dump(), rc.optimizer);
			rc.optimizer.tdf = rc.problem.tdf;
			rc.problem.validate();

			if (j.contains("initial"))
			{
				const json &ji = j.at("initial");
				check_keys(ji, "initial", {"strategy", "cells_x", "cells_y", "t0", "pre_iters", "n_extra", "ground_structure"});
				rc.initial.strategy = ji.value("strategy", rc.initial.strategy);
				rc.initial.cells.cells_x = ji.value("cells_x", rc.initial.cells.cells_x);
				rc.initial.cells.cells_y = ji.value("cells_y", rc.initial.cells.cells_y);
				rc.initial.cells.t0 = ji.value("t0", rc.initial.cells.t0);
				rc.initial.pre_iters = ji.value("pre_iters", rc.initial.pre_iters);
				rc.initial.n_extra = ji.value("n_extra", rc.initial.n_extra);
				if (ji.contains("ground_structure"))
					rc.initial.ground_structure = ji.at("ground_structure").get<std::string>();
			}
			if (rc.initial.strategy < 1 || rc.initial.strategy > 3)
				throw ConfigError("initial.strategy must be 1, 2 or 3");
			rc.initial.cells.validate();

			if (j.contains("plan"))
			{
				if (j["plan"].contains("optimizer"))
					throw ConfigError("plan.optimizer is not allowed; the top-level optimizer section applies to dataset runs");
				rc.plan = parse_plan(j.at("plan").dump());
			}
			rc.plan.optimizer = rc.optimizer;
			rc.plan.validate();

			rc.load_pos = j.value("load_pos", 0);
			if (rc.load_pos < 0 || rc.load_pos >= rc.problem.num_labels)
				throw ConfigError("load_pos out of range");
			rc.threshold = j.value("threshold", 0.5);
			if (!(rc.threshold > 0.0 && rc.threshold < 1.0))
				throw ConfigError("threshold must lie in (0, 1)");
			rc.plan.threshold = rc.threshold;
			return rc;
		}
		catch (const json::exception &e)
		{
			throw ConfigError(std::string("config: ") + e.what());
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

	RunConfig load_config(const std::string &path)
	{
		std::ifstream in(path);
		if (!in)
			throw ConfigError("cannot read config file " + path);
		std::stringstream ss;
		ss << in.rdbuf();
		return parse_config(ss.str());
	}

	GroundStructure build_initial(const RunConfig &config, int label, std::uint64_t seed)
	{
		if (config.initial.ground_structure)
		{
			std::ifstream in(*config.initial.ground_structure);
			if (!in)
				throw Error("cannot read ground structure " + *config.initial.ground_structure);
			std::stringstream ss;
			ss << in.rdbuf();
			return parse_ground_structure(ss.str());
		}
		const DesignDomain domain = config.problem.domain(label);
		if (config.initial.cells.thickness(domain) <= config.problem.tdf.min_thickness)
			throw ConfigError("initial thickness does not exceed the elimination threshold " +
			                  std::to_string(config.problem.tdf.min_thickness) + "; raise initial.t0");
		switch (config.initial.strategy)
		{
		case 2:
			if (config.initial.pre_iters > 0)
				return strategy2(config.initial.cells, domain, config.problem.fea_model(label), config.optimizer, config.initial.pre_iters);
			return strategy2(config.initial.cells, domain, config.problem.fea_model(label), config.optimizer, seed);
		case 3:
			return strategy3(config.initial.cells, domain, config.initial.n_extra, seed);
		default:
			return strategy1(config.initial.cells, domain);
		}
	}
} // namespace mmcgen
