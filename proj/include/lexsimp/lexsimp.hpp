//
// Copyright 2026 The lexsimp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LEXSIMP_LEXSIMP_HPP_
#define LEXSIMP_LEXSIMP_HPP_

#include "lexsimp/common.hpp"
#include "lexsimp/core.hpp"
#include "lexsimp/cwi.hpp"
#include "lexsimp/evaluation.hpp"
#include "lexsimp/generation.hpp"
#include "lexsimp/metrics.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/pipeline.hpp"
#include "lexsimp/ranking.hpp"
#include "lexsimp/resources.hpp"
#include "lexsimp/run_config.hpp"
#include "lexsimp/stemmer.hpp"
#include "lexsimp/text.hpp"
#include "lexsimp/transformer_backend.hpp"
#include "lexsimp/types.hpp"

#endif  // LEXSIMP_LEXSIMP_HPP_
