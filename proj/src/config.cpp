#include "cgw/config.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "json.hpp"

namespace cgw {

using nlohmann::json;

void RunConfig::validate() const
{
    auto positive = [](double v, const char* what) {
        if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be positive");
    };
    positive(quad.rel_tol, "quad.rel_tol");
    positive(quad.abs_tol, "quad.abs_tol");
    positive(quad.arc_height, "quad.arc_height");
    positive(quad.loop_radius, "quad.loop_radius");
    positive(ladder.delta0_frac, "ladder.delta0_frac");
    positive(thresholds.zero_rel, "thresholds.zero_rel");
    positive(thresholds.indeterminate_band, "thresholds.indeterminate_band");
    positive(thresholds.singular_det_rel, "thresholds.singular_det_rel");
    positive(thresholds.log_zero_rel, "thresholds.log_zero_rel");
    if (ladder.points < 2) throw std::invalid_argument("ladder.points must be at least 2");
    if (ladder.series_terms < 1) throw std::invalid_argument("ladder.series_terms must be at least 1");
    if (quad.min_level < 1 || quad.max_level < quad.min_level)
        throw std::invalid_argument("quad levels must satisfy 1 <= min_level <= max_level");
    if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
}

namespace {

template <class T>
void take(const json& j, const char* key, T& out)
{
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json_text(const std::string& text)
{
    RunConfig cfg;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    try {
        if (j.contains("quad")) {
            const auto& q = j.at("quad");
            take(q, "rel_tol", cfg.quad.rel_tol);
            take(q, "abs_tol", cfg.quad.abs_tol);
            take(q, "min_level", cfg.quad.min_level);
            take(q, "max_level", cfg.quad.max_level);
            take(q, "fixed_level", cfg.quad.fixed_level);
            take(q, "loop_kappa", cfg.quad.loop_kappa);
            take(q, "loop_radius", cfg.quad.loop_radius);
            take(q, "arc_height", cfg.quad.arc_height);
        }
        if (j.contains("ladder")) {
            const auto& l = j.at("ladder");
            take(l, "delta0_frac", cfg.ladder.delta0_frac);
            take(l, "points", cfg.ladder.points);
            take(l, "series_terms", cfg.ladder.series_terms);
            take(l, "log_terms", cfg.ladder.log_terms);
        }
        if (j.contains("thresholds")) {
            const auto& t = j.at("thresholds");
            take(t, "zero_rel", cfg.thresholds.zero_rel);
            take(t, "indeterminate_band", cfg.thresholds.indeterminate_band);
            take(t, "singular_det_rel", cfg.thresholds.singular_det_rel);
            take(t, "log_zero_rel", cfg.thresholds.log_zero_rel);
        }
        take(j, "format", cfg.format);
        take(j, "seed", cfg.seed);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad config value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string config_to_json_text(const RunConfig& cfg)
{
    json j = {
        {"quad",
         {{"rel_tol", cfg.quad.rel_tol},
          {"abs_tol", cfg.quad.abs_tol},
          {"min_level", cfg.quad.min_level},
          {"max_level", cfg.quad.max_level},
          {"fixed_level", cfg.quad.fixed_level},
          {"loop_kappa", cfg.quad.loop_kappa},
          {"loop_radius", cfg.quad.loop_radius},
          {"arc_height", cfg.quad.arc_height}}},
        {"ladder",
         {{"delta0_frac", cfg.ladder.delta0_frac},
          {"points", cfg.ladder.points},
          {"series_terms", cfg.ladder.series_terms},
          {"log_terms", cfg.ladder.log_terms}}},
        {"thresholds",
         {{"zero_rel", cfg.thresholds.zero_rel},
          {"indeterminate_band", cfg.thresholds.indeterminate_band},
          {"singular_det_rel", cfg.thresholds.singular_det_rel},
          {"log_zero_rel", cfg.thresholds.log_zero_rel}}},
        {"format", cfg.format},
        {"seed", cfg.seed},
    };
    return j.dump(2);
}

int thread_count()
{
    if (const char* s = std::getenv("CGW_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0) return static_cast<int>(std::min<long>(v, 256));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
thread_local bool in_worker = false;
}

void parallel_for(int n, const std::function<void(int)>& body)
{
    const int workers = in_worker ? 1 : std::min(n, thread_count());
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
    auto run = [&] {
        const bool outer = in_worker;
        in_worker = true;
        for (int i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[static_cast<size_t>(i)] = std::current_exception();
            }
        }
        in_worker = outer;
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace cgw
