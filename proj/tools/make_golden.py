#!/usr/bin/env python3
# Copyright 2026 The kfou Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates tests/data/golden.json with mpmath at 40 digits."""

import json
import os
import sys

import mpmath as mp

mp.mp.dps = 40


def f(v):
    return float(v)


def erfcx(z):
    return mp.exp(z * z) * mp.erfc(z)


def laplace(x, k):
    return k / 2 * mp.exp(-k * abs(x))


def kernel_n1(x, t, k=1, beta=1):
    # Regular part of the sigma = 0, alpha = 1 kernel centered at 0.
    return k / 2 * (1 - mp.exp(-2 * beta * t)) * mp.exp(-k * abs(x))


def inverse_fourier_even(fhat, x):
    g = lambda w: fhat(w) * mp.cos(w * x)
    if x == 0:
        return mp.quad(g, [0, mp.inf]) / mp.pi
    return mp.quadosc(g, [0, mp.inf], omega=abs(x)) / mp.pi


def main():
    out = {}
    out["erfcx"] = [[z, f(erfcx(mp.mpf(z)))] for z in [-3, -0.5, 0, 0.5, 1, 5, 26, 30, 100]]
    out["bessel_k0"] = [[x, f(mp.besselk(0, x))] for x in [1e-3, 0.5, 1, 2, 5, 10]]

    k = mp.mpf(1)
    out["fn3"] = [[x, f(inverse_fourier_even(lambda w: 1 / (k**2 + w**2) ** 3, mp.mpf(x)))]
                  for x in [0, 0.5, 1, 2.5, 4]]

    # Stationary density, sigma = 0.5, beta = 1, k = 1, B = 0: Laplace * Gaussian.
    v = mp.mpf(0.5) ** 2 / 2
    gauss = lambda z: mp.exp(-z * z / (2 * v)) / mp.sqrt(2 * mp.pi * v)
    out["stationary_sigma"] = [
        [x, f(mp.quad(lambda z: laplace(mp.mpf(x) - z, 1) * gauss(z), [-mp.inf, 0, x, mp.inf]))]
        for x in [-3, -1, 0, 0.4, 2]]

    # Gaussian data e^{-(x-2)^2}/sqrt(pi), sigma = 0, alpha = 1, k = beta = 1, t = 1.
    t = mp.mpf(1)
    E = mp.exp(-t)
    phi = lambda y: mp.exp(-(y - 2) ** 2) / mp.sqrt(mp.pi)

    def evolved(x, init, breaks):
        x = mp.mpf(x)
        reg = mp.quad(lambda y: kernel_n1(x - y * E, t) * init(y), [-mp.inf] + breaks(x) + [mp.inf])
        return reg + mp.exp(-2 * t) * mp.exp(t) * init(x * mp.exp(t))

    out["gaussian_t1"] = [[x, f(evolved(x, phi, lambda x: [x / E]))] for x in [-1, 0, 0.5, 0.74, 1.5, 3]]

    step = lambda y: 1 if -2.5 <= y <= -1.5 else 0
    out["step_t1"] = [[x, f(evolved(x, step, lambda x: sorted([-2.5, -1.5, x / E])))]
                      for x in [-2, -0.8, -0.7, 0, 1]]

    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests", "data", "golden.json")
    if len(sys.argv) > 1:
        path = sys.argv[1]
    with open(path, "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
