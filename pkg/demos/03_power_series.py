"""Power series automorphisms: the Catalan numbers and random round trips."""

# %%
import random

from weylinv.generate import random_series_automorphism
from weylinv.series import SeriesEndomorphism, TruncatedSeries, series_compose, series_invert

# the compositional inverse of x + x^2 has the signed Catalan numbers as coefficients
x = TruncatedSeries.variable(1, 8, 0)
print(series_invert(SeriesEndomorphism([x + x ** 2])).images[0])

# %%
# everything is exact modulo terms of total degree above the order
rng = random.Random(2)
sigma = random_series_automorphism(2, 4, rng)
tau = series_invert(sigma)
for im in tau.images:
    print(im)
print(series_compose(sigma, tau) == SeriesEndomorphism.identity(2, 4))

# %%
# raising the order only appends terms, it never changes the ones already found
low = series_invert(SeriesEndomorphism([x.truncate(4) + x.truncate(4) ** 2])).images[0]
print(low)
print(series_invert(SeriesEndomorphism([x + x ** 2])).images[0].truncate(4) == low)
