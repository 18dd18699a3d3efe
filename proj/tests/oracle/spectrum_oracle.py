# Copyright 2026 The nlgate Authors
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

"""High-precision quadrature oracle for pulse-averaged cavity reflection.

Independent of the C++ quadrature: evaluates with mpmath at 30 digits.
Run directly to print the values frozen into tests/cavity_test.cpp.
"""

import mpmath as mp

mp.mp.dps = 30


def reflection(omega, pz, g, gamma, gamma_s):
    s = g**2 * pz / (omega + 1j * gamma_s / 2)
    return (omega - 1j * gamma / 2 - s) / (omega + 1j * gamma / 2 - s)


def gaussian_average(sigma, pz=0, g=10, gamma=1, gamma_s=1, center=0):
    def density(w):
        return mp.exp(-((w - center) ** 2) / (2 * sigma**2)) / (mp.sqrt(2 * mp.pi) * sigma)

    lo, hi = center - 8 * sigma, center + 8 * sigma
    re = mp.quad(lambda w: density(w) * mp.re(reflection(w, pz, g, gamma, gamma_s)), [lo, center, hi])
    im = mp.quad(lambda w: density(w) * mp.im(reflection(w, pz, g, gamma, gamma_s)), [lo, center, hi])
    return mp.mpc(re, im)


def main():
    for sigma in (0.05, 0.1):
        v = gaussian_average(sigma)
        print(f"pz=0 sigma={sigma}: <r>={mp.nstr(v, 17)} |<r>|={mp.nstr(abs(v), 17)}")
    v = gaussian_average(0.1, pz=1, g=10, gamma=1, gamma_s=1)
    print(f"pz=1 g=10 sigma=0.1: <r>={mp.nstr(v, 17)}")


if __name__ == "__main__":
    main()
