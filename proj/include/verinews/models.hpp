#pragma once

#include "verinews/linear_model.hpp"
#include "verinews/logistic.hpp"
#include "verinews/naive_bayes.hpp"
#include "verinews/predict.hpp"
#include "verinews/sgd.hpp"
#include "verinews/train_config.hpp"
