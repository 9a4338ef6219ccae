// Copyright 2026 The zk3col Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZK3COL_ZK3COL_HPP_
#define ZK3COL_ZK3COL_HPP_

// Umbrella header for the whole library.

#include "zk3col/adversary.hpp"
#include "zk3col/commit.hpp"
#include "zk3col/dist.hpp"
#include "zk3col/engine.hpp"
#include "zk3col/f3.hpp"
#include "zk3col/graph.hpp"
#include "zk3col/net.hpp"
#include "zk3col/pmf.hpp"
#include "zk3col/rational.hpp"
#include "zk3col/rng.hpp"
#include "zk3col/timing.hpp"
#include "zk3col/wire.hpp"
#include "zk3col/zk.hpp"

#endif  // ZK3COL_ZK3COL_HPP_
