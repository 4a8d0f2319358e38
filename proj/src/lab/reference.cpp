#include "explab/lab/reference.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "explab/errors.hpp"

namespace explab::lab {

namespace fs = std::filesystem;

std::string reference_key(const ProblemSpec& spec, const std::string& correction, const ReferenceRecipe& recipe) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "explab-reference v1|%s|n=%zu|T=%.17g|%s|%s|%.17g", spec.id.c_str(), spec.n,
                  spec.horizon, correction.c_str(), recipe.method.c_str(), recipe.tau);
    return buf;
}

std::optional<ReferenceRecipe> effective_recipe(const ProblemSpec& spec, const std::optional<ReferenceRecipe>& forced) {
    if (forced) return forced;
    if (spec.exact) return std::nullopt;
    if (!spec.reference) throw InvalidArgument("problem " + spec.id + " has neither an exact solution nor a reference");
    return spec.reference;
}

namespace {

std::optional<std::vector<double>> load(const fs::path& path, const std::string& key, std::size_t size) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string stored;
    std::getline(in, stored);
    if (stored != key) return std::nullopt;
    std::vector<double> v(size);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(size * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(size * sizeof(double))) return std::nullopt;
    return v;
}

void store(const fs::path& path, const std::string& key, const std::vector<double>& v) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write reference cache " + tmp.string());
        out << key << '\n';
        out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
    fs::rename(tmp, path);
}

}  // namespace

std::vector<double> reference_solution(const ProblemSpec& spec, const CorrectionField& correction,
                                       const std::string& correction_name,
                                       const std::optional<ReferenceRecipe>& forced, const std::string& cache_dir) {
    const auto recipe = effective_recipe(spec, forced);
    if (!recipe) return exact_state(spec, spec.horizon);

    const std::string key = reference_key(spec, correction_name, *recipe);
    fs::path path;
    if (!cache_dir.empty()) {
        char name[32];
        std::snprintf(name, sizeof name, "ref-%016zx.bin", std::hash<std::string>{}(key));
        path = fs::path(cache_dir) / name;
        if (auto hit = load(path, key, spec.op.dimension())) return *hit;
    }
    auto u = run_problem(spec, correction, recipe->method, StepSequence::constant(spec.horizon, recipe->tau))
                 .final_state;
    if (!cache_dir.empty()) store(path, key, u);
    return u;
}

}  // namespace explab::lab
