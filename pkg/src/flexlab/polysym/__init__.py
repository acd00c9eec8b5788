from flexlab.polysym.poly import MvPoly, PolyRing, PolynomialError
from flexlab.polysym.linalg import bareiss_det, formal_discriminant, sylvester_resultant
from flexlab.polysym.sqrtext import SqrtElt, SqrtExtension
from flexlab.polysym.buildf import EUC_RING, HYP_RING, build_f, build_F
from flexlab.polysym.exact import GaussianRational
