#include "cspcount/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "cspcount/errors.hpp"

namespace cspcount {

std::size_t tuple_count(int domain_size, int len) {
    if (domain_size < 1 || len < 0) throw std::invalid_argument("bad tuple space");
    std::size_t n = 1;
    for (int i = 0; i < len; ++i) {
        if (n > (std::size_t(1) << 62) / static_cast<std::size_t>(domain_size))
            throw ResourceError("tuple space d^len does not fit in 64 bits");
        n *= static_cast<std::size_t>(domain_size);
    }
    return n;
}

std::size_t encode_tuple(std::span<const int> tuple, int domain_size) {
    std::size_t index = 0;
    for (int x : tuple) index = index * static_cast<std::size_t>(domain_size) + static_cast<std::size_t>(x - 1);
    return index;
}

Tuple decode_tuple(std::size_t index, int domain_size, int len) {
    Tuple t(static_cast<std::size_t>(len));
    for (int k = len - 1; k >= 0; --k) {
        t[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(domain_size)) + 1;
        index /= static_cast<std::size_t>(domain_size);
    }
    return t;
}

bool next_tuple(Tuple& tuple, int domain_size) {
    for (std::size_t k = tuple.size(); k-- > 0;) {
        if (tuple[k] < domain_size) {
            ++tuple[k];
            return true;
        }
        tuple[k] = 1;
    }
    return false;
}

FunctionTable::FunctionTable(std::string name, int domain_size, int arity, std::vector<Rat> values)
    : name_(std::move(name)), domain_size_(domain_size), arity_(arity), values_(std::move(values)) {
    if (domain_size_ < 1) throw std::invalid_argument("domain size must be >= 1");
    if (arity_ < 1) throw std::invalid_argument("function arity must be >= 1");
    if (values_.size() != tuple_count(domain_size_, arity_))
        throw std::invalid_argument("function '" + name_ + "': expected d^r values");
    for (const Rat& v : values_)
        if (sgn(v) < 0) throw std::invalid_argument("function '" + name_ + "': negative value");
}

const Rat& FunctionTable::at(std::span<const int> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("function '" + name_ + "': wrong argument count");
    for (int x : args)
        if (x < 1 || x > domain_size_)
            throw std::invalid_argument("function '" + name_ + "': argument out of domain");
    return values_[encode_tuple(args, domain_size_)];
}

RelationTable::RelationTable(int domain_size, int arity, std::vector<Tuple> tuples)
    : domain_size_(domain_size), arity_(arity), tuples_(std::move(tuples)) {
    if (domain_size_ < 1) throw std::invalid_argument("domain size must be >= 1");
    if (arity_ < 1) throw std::invalid_argument("relation arity must be >= 1");
    for (const Tuple& t : tuples_) {
        if (static_cast<int>(t.size()) != arity_)
            throw std::invalid_argument("relation tuple of wrong arity");
        for (int x : t)
            if (x < 1 || x > domain_size_)
                throw std::invalid_argument("relation tuple entry out of domain");
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool RelationTable::contains(const Tuple& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t language_fingerprint(const Domain& domain, const std::vector<FunctionTable>& functions) {
    std::size_t h = hash_combine(0x6b43a9b5, static_cast<std::size_t>(domain.size));
    std::hash<std::string> hs;
    for (const FunctionTable& f : functions) {
        h = hash_combine(h, hs(f.name()));
        h = hash_combine(h, static_cast<std::size_t>(f.arity()));
        for (const Rat& v : f.values()) h = hash_combine(h, hs(v.get_str()));
    }
    return h;
}

}  // namespace

Language::Language(Domain domain, std::vector<FunctionTable> functions)
    : domain_(domain), functions_(std::move(functions)) {
    if (domain_.size < 1) throw std::invalid_argument("domain size must be >= 1");
    if (functions_.empty()) throw std::invalid_argument("language must be nonempty");
    for (std::size_t i = 0; i < functions_.size(); ++i) {
        if (functions_[i].domain_size() != domain_.size)
            throw std::invalid_argument("function '" + functions_[i].name() + "': domain mismatch");
        for (std::size_t j = i + 1; j < functions_.size(); ++j)
            if (functions_[i].name() == functions_[j].name())
                throw std::invalid_argument("duplicate function name '" + functions_[i].name() + "'");
    }
    fingerprint_ = language_fingerprint(domain_, functions_);
}

std::size_t Language::function_index(const std::string& name) const {
    for (std::size_t i = 0; i < functions_.size(); ++i)
        if (functions_[i].name() == name) return i;
    throw std::invalid_argument("no function named '" + name + "'");
}

Instance::Instance(std::shared_ptr<const Language> language, int num_vars,
                   std::vector<Application> applications)
    : language_(std::move(language)), num_vars_(num_vars), applications_(std::move(applications)) {
    if (!language_) throw std::invalid_argument("instance without language");
    if (num_vars_ < 1) throw std::invalid_argument("instance must have at least one variable");
    for (const Application& app : applications_) {
        if (app.function >= language_->functions().size())
            throw std::invalid_argument("application references unknown function");
        const FunctionTable& f = language_->function(app.function);
        if (static_cast<int>(app.vars.size()) != f.arity())
            throw std::invalid_argument("application of '" + f.name() + "': index tuple length != arity");
        for (int v : app.vars)
            if (v < 1 || v > num_vars_)
                throw std::invalid_argument("application of '" + f.name() + "': variable index out of range");
    }
}

namespace {

// Table index of (x_{i_1},...,x_{i_r}) without materializing the argument tuple.
std::size_t app_index(const Application& app, const Tuple& x, int d) {
    std::size_t index = 0;
    for (int v : app.vars)
        index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(x[static_cast<std::size_t>(v - 1)] - 1);
    return index;
}

}  // namespace

Rat evaluate(const Instance& instance, const Tuple& assignment) {
    const int d = instance.language().domain().size;
    if (static_cast<int>(assignment.size()) != instance.num_vars())
        throw std::invalid_argument("assignment length != number of variables");
    for (int x : assignment)
        if (x < 1 || x > d) throw std::invalid_argument("assignment entry out of domain");
    Rat product(1);
    for (const Application& app : instance.applications()) {
        const Rat& v = instance.language().function(app.function).at_index(app_index(app, assignment, d));
        if (sgn(v) == 0) return Rat(0);
        product *= v;
    }
    return product;
}

bool evaluates_positive(const Instance& instance, const Tuple& assignment) {
    const int d = instance.language().domain().size;
    for (const Application& app : instance.applications()) {
        const Rat& v = instance.language().function(app.function).at_index(app_index(app, assignment, d));
        if (sgn(v) == 0) return false;
    }
    return true;
}

RelationTable support_function(const FunctionTable& f) {
    std::vector<Tuple> tuples;
    const std::size_t total = f.values().size();
    for (std::size_t index = 0; index < total; ++index)
        if (sgn(f.at_index(index)) > 0)
            tuples.push_back(decode_tuple(index, f.domain_size(), f.arity()));
    return RelationTable(f.domain_size(), f.arity(), std::move(tuples));
}

std::vector<RelationTable> support_language(const Language& language) {
    std::vector<RelationTable> supports;
    supports.reserve(language.functions().size());
    for (const FunctionTable& f : language.functions()) supports.push_back(support_function(f));
    return supports;
}

FunctionTable marginalize(const FunctionTable& f, int l) {
    if (l < 1 || l > f.arity())
        throw std::invalid_argument("marginalize: level out of range");
    if (l == f.arity()) return f;
    const std::size_t kept = tuple_count(f.domain_size(), l);
    const std::size_t summed = tuple_count(f.domain_size(), f.arity() - l);
    std::vector<Rat> values(kept, Rat(0));
    for (std::size_t i = 0; i < kept; ++i)
        for (std::size_t j = 0; j < summed; ++j)
            values[i] += f.at_index(i * summed + j);
    return FunctionTable(f.name() + "[" + std::to_string(l) + "]", f.domain_size(), l,
                         std::move(values));
}

}  // namespace cspcount
