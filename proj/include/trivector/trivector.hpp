/*
 * Copyright 2026 The trivector Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


/// @file trivector.hpp
/// @brief Umbrella header.

#pragma once

#include "trivector/coble.hpp"
#include "trivector/error.hpp"
#include "trivector/exterior.hpp"
#include "trivector/io.hpp"
#include "trivector/linalg.hpp"
#include "trivector/mpoly.hpp"
#include "trivector/scalars.hpp"
#include "trivector/subspaces.hpp"
#include "trivector/verlinde.hpp"
#include "trivector/w38.hpp"
