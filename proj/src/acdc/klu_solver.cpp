#include "acdc/klu_solver.hpp"

#include <klu.h>

#include <stdexcept>

namespace acdc {

struct LinearSolver::Impl {
    klu_common common{};
    klu_symbolic* symbolic = nullptr;
    klu_numeric* numeric = nullptr;
    int n = 0;

    Impl() { klu_defaults(&common); }

    ~Impl() {
        if (numeric) klu_free_numeric(&numeric, &common);
        if (symbolic) klu_free_symbolic(&symbolic, &common);
    }
};

LinearSolver::LinearSolver() : impl_(std::make_unique<Impl>()) {}
LinearSolver::~LinearSolver() = default;

void LinearSolver::analyze(FixedPatternMatrix& m) {
    if (!m.finalized()) throw std::logic_error("matrix pattern not finalized");
    if (impl_->symbolic) klu_free_symbolic(&impl_->symbolic, &impl_->common);
    impl_->n = m.n();
    impl_->symbolic = klu_analyze(m.n(), m.col_ptr_mut().data(), m.row_idx_mut().data(),
                                  &impl_->common);
    if (!impl_->symbolic) throw std::runtime_error("symbolic analysis failed");
    ++symbolic_count_;
}

bool LinearSolver::factor(FixedPatternMatrix& m) {
    if (!impl_->symbolic) throw std::logic_error("factor() before analyze()");
    if (impl_->numeric) klu_free_numeric(&impl_->numeric, &impl_->common);
    impl_->numeric = klu_factor(m.col_ptr_mut().data(), m.row_idx_mut().data(),
                                m.values_mut().data(), impl_->symbolic, &impl_->common);
    ++numeric_count_;
    if (!impl_->numeric || impl_->common.status != KLU_OK) {
        last_error_ = impl_->common.status == KLU_SINGULAR ? "numerically singular matrix"
                                                           : "numeric factorization failed";
        return false;
    }
    return true;
}

void LinearSolver::solve_negated(std::span<const double> residual, std::span<double> increment) {
    if (!impl_->numeric) throw std::logic_error("solve before a successful factor()");
    for (size_t i = 0; i < residual.size(); ++i) increment[i] = -residual[i];
    int ok = klu_solve(impl_->symbolic, impl_->numeric, impl_->n, 1, increment.data(),
                       &impl_->common);
    if (!ok) throw std::runtime_error("triangular solve failed");
}

}  // namespace acdc
