//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>
#include <vector>

#include "catarch/enumerate.hpp"
#include "catarch/term.hpp"

namespace catarch {

// Terms of the free monad on a base shape over a finite variable set
// {0..num_vars-1}: each node is either a variable leaf or a base-shape layer
// over smaller free terms. Represented as a Term over base + Const(vars),
// so enumeration and serialization are shared with plain terms.
class FreeTerm {
  public:
    FreeTerm() = default;

    static FreeTerm var(const Functor& base, int num_vars, int v);
    static FreeTerm op(const Functor& base, int num_vars,
                       FVal<FreeTerm, int> layer);
    static FreeTerm from_term(const Functor& base, int num_vars,
                              const Term& t);

    bool valid() const { return term_.valid(); }
    const Functor& base() const { return base_; }
    int num_vars() const { return num_vars_; }
    const Term& as_term() const { return term_; }

    bool is_var() const;
    int var_index() const;                // when is_var()
    FVal<FreeTerm, int> op_layer() const; // when !is_var()

    std::size_t size() const { return term_.size(); }
    int depth() const; // constructor layers along the deepest path

    bool operator==(const FreeTerm& o) const { return term_ == o.term_; }
    bool operator!=(const FreeTerm& o) const { return !(*this == o); }
    const std::string& key() const { return term_.key(); }

  private:
    Functor base_ = Functor::id();
    int num_vars_ = 0;
    Term term_;
};

// Tree layers deeper than this are rejected; errors rather than truncates so
// runaway grafting surfaces instead of silently losing structure.
inline constexpr int kFreeDepthCap = 64;

// Shape of the representing terms: base + Const({z0..z_{n-1}}).
Functor free_shape(const Functor& base, int num_vars);

// Unit of the monad: the term that is just the variable.
FreeTerm free_pure(const Functor& base, int num_vars, int v);

// Multiplication: outer's variables index into bindings; each variable leaf
// is replaced by its binding (grafting). All bindings must share base and
// variable set; the result's depth is checked against kFreeDepthCap.
FreeTerm free_join(const FreeTerm& outer,
                   const std::vector<FreeTerm>& bindings);

// Functorial action on variables: leaf z becomes var_map[z].
FreeTerm free_rename(const FreeTerm& t, const std::vector<int>& var_map,
                     int new_num_vars);

// The k-th stage of iterating X -> F(X) + X from the variable set, holding
// only terms of size <= max_size. Stage 0 is the variables; each stage adds
// every one-layer extension over the previous stage. Returns the stages
// 0..iterations (keys sorted). iterations above kFreeDepthCap is an error.
std::vector<std::vector<FreeTerm>> free_iteration_stages(
    const Functor& base, int num_vars, int max_size, int iterations,
    EnumerateOptions opts = {});

} // namespace catarch
