#include "cspcount/vecrep.hpp"

#include <functional>
#include <stdexcept>

#include "cspcount/exactmat.hpp"

namespace cspcount {

namespace {

using RowPicker = std::function<std::size_t(const std::vector<std::size_t>&)>;

FunctionVecrep build_vecrep(const FunctionTable& f, const RowPicker& pick_row) {
    const int d = f.domain_size();
    const int r = f.arity();
    FunctionVecrep result;
    VectorRepresentation rep;
    rep.domain_size = d;

    // s_1 is the full marginal; deeper levels follow the induction, each
    // consuming the block structure of f^[l] as a d^(l-1) x d matrix.
    FunctionTable m1 = marginalize(f, 1);
    rep.s.push_back(m1.values());

    for (int l = 2; l <= r; ++l) {
        FunctionTable fl = marginalize(f, l);
        RationalMatrix m = function_matrix(fl, l - 1);
        BlockRank1Check check = is_block_rank_1(m);
        if (!check.ok) {
            result.not_block_rank_1_level = l;
            return result;
        }
        BlockDecomposition blocks = *block_decompose(m).decomposition;
        std::vector<Rat> sl(static_cast<std::size_t>(d), Rat(0));
        for (const auto& block : blocks.blocks) {
            const std::size_t u = block.rows[pick_row(block.rows)];
            Rat row_sum(0);
            for (std::size_t c : block.cols) row_sum += m.at(u, c);
            for (std::size_t c : block.cols) sl[c] = m.at(u, c) / row_sum;
        }
        rep.s.push_back(std::move(sl));
    }
    result.rep = std::move(rep);
    return result;
}

}  // namespace

FunctionVecrep function_vecrep(const FunctionTable& f) {
    return build_vecrep(f, [](const std::vector<std::size_t>&) { return std::size_t{0}; });
}

FunctionVecrep function_vecrep_randomized(const FunctionTable& f, std::mt19937_64& rng) {
    return build_vecrep(f, [&rng](const std::vector<std::size_t>& rows) {
        return static_cast<std::size_t>(rng() % rows.size());
    });
}

LanguageVecreps language_vecreps(const Language& language) {
    LanguageVecreps cache;
    cache.per_function.reserve(language.functions().size());
    for (std::size_t i = 0; i < language.functions().size(); ++i) {
        cache.per_function.push_back(function_vecrep(language.function(i)));
        if (!cache.per_function.back().ok() && cache.all_ok) {
            cache.all_ok = false;
            cache.first_failed_function = i;
        }
    }
    return cache;
}

InstanceVecrep instance_vecrep(const Instance& instance, const LanguageVecreps& cache) {
    InstanceVecrep result;
    const int d = instance.language().domain().size;
    VectorRepresentation rep;
    rep.domain_size = d;
    rep.s.assign(static_cast<std::size_t>(instance.num_vars()),
                 std::vector<Rat>(static_cast<std::size_t>(d), Rat(1)));
    for (const Application& app : instance.applications()) {
        const FunctionVecrep& fr = cache.per_function[app.function];
        if (!fr.ok()) {
            result.failed_function = app.function;
            result.not_block_rank_1_level = fr.not_block_rank_1_level;
            return result;
        }
        for (std::size_t j = 0; j < app.vars.size(); ++j) {
            auto& target = rep.s[static_cast<std::size_t>(app.vars[j] - 1)];
            const auto& factor = fr.rep->s[j];
            for (int a = 0; a < d; ++a)
                target[static_cast<std::size_t>(a)] *= factor[static_cast<std::size_t>(a)];
        }
    }
    result.rep = std::move(rep);
    return result;
}

InstanceVecrep instance_vecrep(const Instance& instance) {
    return instance_vecrep(instance, language_vecreps(instance.language()));
}

namespace {

bool product_matches(const VectorRepresentation& rep, const Tuple& x, const Rat& expected) {
    Rat product(1);
    for (std::size_t j = 0; j < x.size(); ++j)
        product *= rep.s[j][static_cast<std::size_t>(x[j] - 1)];
    return product == expected;
}

}  // namespace

bool verify_vecrep(const FunctionTable& f, const VectorRepresentation& rep) {
    if (rep.arity() != f.arity() || rep.domain_size != f.domain_size())
        throw std::invalid_argument("verify_vecrep: shape mismatch");
    const std::size_t total = f.values().size();
    for (std::size_t index = 0; index < total; ++index) {
        const Rat& v = f.at_index(index);
        if (sgn(v) == 0) continue;  // holes are legal
        if (!product_matches(rep, decode_tuple(index, f.domain_size(), f.arity()), v))
            return false;
    }
    return true;
}

bool verify_vecrep(const Instance& instance, const VectorRepresentation& rep,
                   const EnumLimits& limits) {
    if (rep.arity() != instance.num_vars() ||
        rep.domain_size != instance.language().domain().size)
        throw std::invalid_argument("verify_vecrep: shape mismatch");
    const int d = instance.language().domain().size;
    const std::size_t total = tuple_count(d, instance.num_vars());
    if (total > limits.max_points)
        throw ResourceError("verify_vecrep enumeration exceeds the configured bound");
    Tuple x(static_cast<std::size_t>(instance.num_vars()), 1);
    for (std::size_t index = 0; index < total; ++index) {
        if (evaluates_positive(instance, x) && !product_matches(rep, x, evaluate(instance, x)))
            return false;
        next_tuple(x, d);
    }
    return true;
}

}  // namespace cspcount
