# FILE: switchcert/certificates/__init__.py

from switchcert.certificates.chi import ChiTerm, chi_term
from switchcert.certificates.loewner import SemidefReport, check_negative_semidefinite, loewner_leq
from switchcert.certificates.models import CertificateThm4, CertificateThm5
from switchcert.certificates.theorem4 import Thm4Report, assemble_pi, build_pi, check_thm4
from switchcert.certificates.theorem5 import HalanayConstants, Thm5Report, build_MN, check_thm5, spectral_norm
