#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cspcount/rational.hpp"

namespace cspcount {

/// Domain {1, ..., d}. Every domain element anywhere in the library is a
/// 1-based int in [1, d].
struct Domain {
    int size = 0;
};

/// A tuple over the domain; also used for variable assignments.
using Tuple = std::vector<int>;

// --- tuple <-> dense index codec (row-major, last index fastest) ---

std::size_t tuple_count(int domain_size, int len);  // d^len, ResourceError on overflow
std::size_t encode_tuple(std::span<const int> tuple, int domain_size);
Tuple decode_tuple(std::size_t index, int domain_size, int len);

/// Odometer step in lexicographic order. Returns false (and resets to all
/// ones) after the last tuple.
bool next_tuple(Tuple& tuple, int domain_size);

/// Named non-negative function f : D^r -> Q>=0 stored as a dense table of
/// d^r values, row-major with the last index fastest.
class FunctionTable {
  public:
    FunctionTable(std::string name, int domain_size, int arity, std::vector<Rat> values);

    const std::string& name() const { return name_; }
    int domain_size() const { return domain_size_; }
    int arity() const { return arity_; }
    const std::vector<Rat>& values() const { return values_; }

    const Rat& at(std::span<const int> args) const;
    const Rat& at_index(std::size_t index) const { return values_[index]; }

  private:
    std::string name_;
    int domain_size_;
    int arity_;
    std::vector<Rat> values_;
};

/// Relation over D^r kept as a lexicographically sorted tuple list
/// (equivalently a 0/1 function table).
class RelationTable {
  public:
    RelationTable(int domain_size, int arity, std::vector<Tuple> tuples);

    int domain_size() const { return domain_size_; }
    int arity() const { return arity_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    bool contains(const Tuple& t) const;
    bool empty() const { return tuples_.empty(); }
    std::size_t size() const { return tuples_.size(); }

  private:
    int domain_size_;
    int arity_;
    std::vector<Tuple> tuples_;  // sorted, unique
};

/// A weighted constraint language: a domain plus a finite set of named
/// function tables.
class Language {
  public:
    Language(Domain domain, std::vector<FunctionTable> functions);

    const Domain& domain() const { return domain_; }
    const std::vector<FunctionTable>& functions() const { return functions_; }
    const FunctionTable& function(std::size_t index) const { return functions_[index]; }
    /// Index of the function with this name; throws std::invalid_argument if absent.
    std::size_t function_index(const std::string& name) const;

    /// Stable content hash binding certificates to a concrete language.
    std::size_t fingerprint() const { return fingerprint_; }

  private:
    Domain domain_;
    std::vector<FunctionTable> functions_;
    std::size_t fingerprint_;
};

/// One constraint application: a function of the language applied to a
/// tuple of variable indices (1-based; repeats allowed).
struct Application {
    std::size_t function;   // index into Language::functions()
    std::vector<int> vars;  // length == arity of the function
};

/// An input instance: n variables plus a sequence of applications over a
/// shared language. Duplicate applications are allowed and meaningful.
class Instance {
  public:
    Instance(std::shared_ptr<const Language> language, int num_vars,
             std::vector<Application> applications);

    const Language& language() const { return *language_; }
    std::shared_ptr<const Language> language_ptr() const { return language_; }
    int num_vars() const { return num_vars_; }
    const std::vector<Application>& applications() const { return applications_; }
    /// Instance size in the n + m sense.
    std::size_t size() const { return static_cast<std::size_t>(num_vars_) + applications_.size(); }

  private:
    std::shared_ptr<const Language> language_;
    int num_vars_;
    std::vector<Application> applications_;
};

/// F_I(x): the product of all applied function values at x. The empty
/// application list yields 1.
Rat evaluate(const Instance& instance, const Tuple& assignment);

/// True iff every applied function is positive at x, i.e. F_I(x) > 0.
/// Cheaper than evaluate when only the support matters.
bool evaluates_positive(const Instance& instance, const Tuple& assignment);

/// The support relation { x : f(x) > 0 } of a single function.
RelationTable support_function(const FunctionTable& f);

/// Supports of all functions of the language, in language order.
std::vector<RelationTable> support_language(const Language& language);

/// f^[l]: sums out the trailing r - l coordinates. l == r returns f itself.
FunctionTable marginalize(const FunctionTable& f, int l);

}  // namespace cspcount
