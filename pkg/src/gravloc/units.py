"""Physical constants and unit helpers.

Everything is CGS. The only user-facing units elsewhere are proton masses
(``mu``) for mass and centimetres for length.

Constant values are CODATA 2018, rounded to five significant figures and
converted to CGS:

=========  =======================  ===================
symbol     value                    unit
=========  =======================  ===================
G          6.674e-8                 cm^3 g^-1 s^-2
hbar       1.0546e-27               erg s
c          2.9979e10                cm s^-1
m_p        1.6726e-24               g
=========  =======================  ===================
"""

from dataclasses import asdict, dataclass

from ._validation import check_positive

#: Reference condensed-matter number density, proton masses per cm^3.
RHO_REF = 1e24


@dataclass(frozen=True)
class Constants:
    """Immutable constant set.

    Any consistent (mass, length, time) system works as long as ``rho_ref``
    is given in proton masses per unit length cubed; the defaults are CGS.
    """

    G: float = 6.674e-8
    hbar: float = 1.0546e-27
    c: float = 2.9979e10
    m_p: float = 1.6726e-24
    rho_ref: float = RHO_REF

    def __post_init__(self):
        for name in ("G", "hbar", "c", "m_p", "rho_ref"):
            check_positive(name, getattr(self, name))

    def as_dict(self):
        return asdict(self)


DEFAULT = Constants()


def constants():
    """Return the canonical CGS constant set."""
    return DEFAULT


def mass_from_mu(mu, const=DEFAULT):
    """Mass in grams of a lump of ``mu`` proton masses."""
    return check_positive("mu", mu) * const.m_p


def lambda0_from_mu(mu, rho_ref=None, const=DEFAULT):
    """Inner dispersion (cm) of a lump of ``mu`` proton masses.

    The lump is taken to satisfy ``mu / lambda0**3 == rho_ref``, so for the
    default density this is ``1e-8 * mu**(1/3)`` cm.
    """
    mu = check_positive("mu", mu)
    rho = const.rho_ref if rho_ref is None else check_positive("rho_ref", rho_ref)
    return (mu / rho) ** (1.0 / 3.0)
