# Copyright 2026 The qdl Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent high-precision evaluation of the closed-form values frozen in
tests/unit/oracle_values.hpp. Run: python3 tests/oracles/derive.py"""
from mpmath import mp, mpf, log, sqrt, exp, ceil, floor

mp.dps = 40


def key_threshold(delta, M, d):
    t = 4 / delta**2 * (log(M) + 2 * d / (delta * M) * log(5 / delta))
    return t, int(floor(t)) + 1


def leak_key_base(delta, M):
    return 4 / delta**2 * (log(M) + 2 / delta**2 * log(5 / delta))


def leak_msg(delta, M, d, n):
    return 4 / delta**3 * (log(M) + delta * (log(M) - n) + mpf(2) ** (n + 1) * d / M * log(5 / delta))


def eta(x):
    return 0 if x == 0 else -x * log(x, 2)


d1 = mpf(0.1)
M = mpf(2) ** 20
t, k = key_threshold(d1, M, 10 * M)
print("key_threshold_real", mp.nstr(t, 20), "K", k)
print("pgm_lower_bound_1024_16", mp.nstr(mpf(64) / 81, 20))
print("bai_yin_min", mp.nstr((1 - sqrt(mpf(0.25))) ** 2 / 512, 20))
print("bai_yin_max", mp.nstr((1 + sqrt(mpf(0.25))) ** 2 / 512, 20))
d = 64
print("maurer", mp.nstr(exp(-200 * (mpf(0.3) / d) ** 2 / (2 * mpf(2) / d**2)), 20))
# bound_objective at Q = (1/d,...,1/d), M entries
for (dd, MM) in [(8, 4), (64, 32)]:
    obj = MM * eta(mpf(1) / dd) - eta(mpf(MM) / dd)
    print("uniform_objective", dd, MM, mp.nstr(obj, 20), "bound", mp.nstr(log(MM, 2) - mpf(dd) / MM * obj, 20))
b0 = leak_key_base(d1, M)
print("leak_key_base", mp.nstr(b0, 20), "K_cond2(0.2)", int(ceil(b0 ** mpf(1.2))),
      "log2 ratio", mp.nstr(log(b0 ** mpf(1.2), 2) / log(b0, 2), 20))
xs = list(range(4, 11))
ys = [log(leak_msg(d1, M, M / d1, n), 2) for n in xs]
mx = sum(xs) / mpf(len(xs))
my = sum(ys) / len(ys)
slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
print("message_slope_M_over_d", mp.nstr(slope, 20))
ys = [log(leak_msg(d1, M, M * d1, n), 2) for n in xs]
my = sum(ys) / len(ys)
slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
print("message_slope_d_over_M", mp.nstr(slope, 20))
print("gamma_normalization_64_32_64_0.1", mp.nstr(mpf(2) / ((1 + sqrt(mpf(64) / (32 * 64))) ** 2 + mpf(0.1)), 20))
print("net_bound_d2_0.5", mp.nstr((5 / mpf(0.5)) ** 4, 20))
