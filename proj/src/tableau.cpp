#include "explab/tableau.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "explab/errors.hpp"
#include "explab/phi.hpp"

namespace explab {

double PhiCombination::evaluate(double z) const {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.coefficient * phi(t.order, scale * z);
    return sum;
}

double PhiCombination::at_zero() const { return evaluate(0.0); }

int PhiCombination::max_order() const {
    int m = 0;
    for (const auto& t : terms) m = std::max(m, t.order);
    return m;
}

int ExponentialTableau::max_order() const {
    int m = 0;
    for (const auto& row : a)
        for (const auto& comb : row) m = std::max(m, comb.max_order());
    for (const auto& comb : b) m = std::max(m, comb.max_order());
    return m;
}

void ExponentialTableau::validate() const {
    const std::size_t s = stages();
    if (s == 0 || b.size() != s || a.size() != s) throw InvalidArgument("tableau " + name + ": inconsistent sizes");
    for (std::size_t i = 0; i < s; ++i) {
        if (a[i].size() != i) throw InvalidArgument("tableau " + name + ": a must be strictly lower triangular");
        for (const auto& comb : a[i])
            if (!comb.empty() && comb.scale != c[i])
                throw InvalidArgument("tableau " + name + ": stage coefficients must use the stage node as scale");
    }
    for (const auto& comb : b)
        if (comb.scale != 1.0) throw InvalidArgument("tableau " + name + ": weights must use unit scale");
}

namespace {

PhiCombination at(double scale, std::vector<PhiTerm> terms) { return {scale, std::move(terms)}; }

}  // namespace

ExponentialTableau exponential_euler() {
    return {"euler", {0.0}, {{}}, {at(1.0, {{1.0, 1}})}};
}

ExponentialTableau strehmel_weiner() {
    ExponentialTableau t;
    t.name = "strehmel-weiner";
    t.c = {0.0, 0.5};
    t.a = {{}, {at(0.5, {{0.5, 1}})}};
    t.b = {PhiCombination{}, at(1.0, {{1.0, 1}})};
    return t;
}

ExponentialTableau krogstad() {
    ExponentialTableau t;
    t.name = "krogstad";
    t.c = {0.0, 0.5, 0.5, 1.0};
    t.a = {
        {},
        {at(0.5, {{0.5, 1}})},
        {at(0.5, {{0.5, 1}, {-1.0, 2}}), at(0.5, {{1.0, 2}})},
        {at(1.0, {{1.0, 1}, {-2.0, 2}}), PhiCombination{}, at(1.0, {{2.0, 2}})},
    };
    t.b = {
        at(1.0, {{1.0, 1}, {-3.0, 2}, {4.0, 3}}),
        at(1.0, {{2.0, 2}, {-4.0, 3}}),
        at(1.0, {{2.0, 2}, {-4.0, 3}}),
        at(1.0, {{-1.0, 2}, {4.0, 3}}),
    };
    return t;
}

namespace {

int parse_stages(std::string_view text, std::string_view full) {
    int s = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), s);
    if (ec != std::errc{} || ptr != text.data() + text.size() || s < 1) throw UnknownName(std::string(full));
    return s;
}

}  // namespace

Method registry_get(std::string_view name) {
    if (name == "euler") return exponential_euler();
    if (name == "strehmel-weiner") return strehmel_weiner();
    if (name == "krogstad") return krogstad();

    std::string_view family;
    std::string_view count;
    if (auto colon = name.find(':'); colon != std::string_view::npos) {
        family = name.substr(0, colon);
        count = name.substr(colon + 1);
    } else if (auto open = name.find('('); open != std::string_view::npos && name.back() == ')') {
        family = name.substr(0, open);
        count = name.substr(open + 1, name.size() - open - 2);
        if (family.ends_with("-quadrature")) family.remove_suffix(std::string_view("-quadrature").size());
    } else {
        throw UnknownName(std::string(name));
    }
    const int s = parse_stages(count, name);
    if (family == "gauss") return solve_weights(NodeSet::gauss(s));
    if (family == "radau") return solve_weights(NodeSet::radau(s));
    if (family == "lobatto") return solve_weights(NodeSet::lobatto(s));
    throw UnknownName(std::string(name));
}

std::string method_label(const Method& method) {
    if (const auto* t = std::get_if<ExponentialTableau>(&method)) return t->name;
    const auto& w = std::get<WeightSet>(method);
    if (w.nodes.family == NodeFamily::custom) return "custom:" + std::to_string(w.stages());
    return w.nodes.label() + ":" + std::to_string(w.stages());
}

}  // namespace explab
