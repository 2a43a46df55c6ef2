#include "simgen/models/observable.hpp"

#include <algorithm>

#include "simgen/models/preprocess.hpp"

namespace simgen::models {

DerivedObservable DerivedObservable::column(std::string name, std::size_t i) {
    return {std::move(name), Kind::Column, {i}, 1.0, false};
}

DerivedObservable DerivedObservable::ratio_sum(std::string name, std::size_t i, std::size_t j,
                                               double denominator) {
    return {std::move(name), Kind::RatioSum, {i, j}, denominator, false};
}

DerivedObservable DerivedObservable::ratio_sum_initial_total(std::string name, std::size_t i,
                                                             std::size_t j) {
    return {std::move(name), Kind::RatioSum, {i, j}, 0.0, true};
}

DerivedObservable DerivedObservable::difference(std::string name, std::size_t i) {
    return {std::move(name), Kind::Difference, {i}, 1.0, false};
}

namespace {

std::vector<double> clamped_column(const ode::Trajectory& traj, std::size_t j) {
    if (j >= traj.dimension())
        throw IndexOutOfRange("observable references state index " + std::to_string(j) +
                              " but system dimension is " + std::to_string(traj.dimension()));
    std::vector<double> out(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) out[k] = std::max(0.0, traj.states[k][j]);
    return out;
}

}  // namespace

std::vector<double> DerivedObservable::evaluate(const ode::Trajectory& traj) const {
    switch (kind) {
        case Kind::Column:
            return clamped_column(traj, indices.at(0));
        case Kind::RatioSum: {
            auto a = clamped_column(traj, indices.at(0));
            auto b = clamped_column(traj, indices.at(1));
            double denom = denominator;
            if (denominator_from_initial_total) {
                denom = 0.0;
                for (double v : traj.states.front()) denom += v;
            }
            if (denom == 0.0)
                throw std::invalid_argument("observable '" + name + "': zero denominator");
            std::vector<double> out(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) out[k] = (a[k] + b[k]) / denom;
            return out;
        }
        case Kind::Difference:
            return finite_difference(clamped_column(traj, indices.at(0)));
    }
    throw std::logic_error("unreachable observable kind");
}

}  // namespace simgen::models
