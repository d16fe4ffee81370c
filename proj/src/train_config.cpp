#include "verinews/train_config.hpp"

#include <cmath>
#include <string>

#include "verinews/errors.hpp"

namespace verinews {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0) || !std::isfinite(value))
    throw TrainingError(std::string("training option ") + field + " must be positive");
}

}  // namespace

void TrainConfig::validate() const {
  require_positive(nb_alpha, "nb_alpha");
  require_positive(lr_C, "lr_C");
  require_positive(lr_tol, "lr_tol");
  require_positive(lr_max_iter, "lr_max_iter");
  require_positive(sgd_alpha, "sgd_alpha");
  require_positive(sgd_max_epochs, "sgd_max_epochs");
  require_positive(sgd_tol, "sgd_tol");
  require_positive(sgd_n_iter_no_change, "sgd_n_iter_no_change");
  require_positive(static_cast<double>(threads), "threads");
}

}  // namespace verinews
