"""
Install the configuration details for the application.
"""
import configparser
import logging
import os

logger = logging.getLogger(__name__)

_configuration_parser = configparser.ConfigParser()

DISPLAY_SECTION_NAME = 'display'
PRECISION_KEY = 'precision'

CORPUS_SECTION_NAME = 'corpus'
PATH_KEY = 'path'

CHECKS_SECTION_NAME = 'checks'
DEFAULT_KEY = 'default'
MU_SCALE_KEY = 'mu_scale'

SELFTEST_SECTION_NAME = 'selftest'
RANDOM_SEED_KEY = 'random_seed'
RANDOM_TRIALS_KEY = 'random_trials'

CORPUS_ENVIRONMENT_KEY = 'SUPERTORSION_CORPUS'

_DEFAULT_CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


def get_configuration():
    global _configuration_parser
    return _configuration_parser


def load_file(filename):
    """
    Load the filename into the configuration parser.
    :param filename:
    :return: list of the files that could be read
    """
    global _configuration_parser
    logger.info('Loading configuration: %s' % filename)
    return _configuration_parser.read(filename)


def reset():
    """
    Restore the default parameters.
    """
    global _configuration_parser
    _configuration_parser = configparser.ConfigParser()
    _install_defaults(_configuration_parser)


def get_precision():
    return _configuration_parser.getint(DISPLAY_SECTION_NAME, PRECISION_KEY)


def get_corpus_path():
    """
    Directory of the corpus; the environment variable wins over the configuration file.
    """
    return os.environ.get(CORPUS_ENVIRONMENT_KEY) or _configuration_parser.get(CORPUS_SECTION_NAME, PATH_KEY)


def get_default_checks():
    value = _configuration_parser.get(CHECKS_SECTION_NAME, DEFAULT_KEY)
    return [check.strip() for check in value.split(',') if check.strip()]


def get_mu_scale():
    return _configuration_parser.get(CHECKS_SECTION_NAME, MU_SCALE_KEY)


def get_random_seed():
    return _configuration_parser.getint(SELFTEST_SECTION_NAME, RANDOM_SEED_KEY)


def get_random_trials():
    return _configuration_parser.getint(SELFTEST_SECTION_NAME, RANDOM_TRIALS_KEY)


def _install_defaults(parser):
    parser.add_section(DISPLAY_SECTION_NAME)
    parser.set(DISPLAY_SECTION_NAME, PRECISION_KEY, '12')

    parser.add_section(CORPUS_SECTION_NAME)
    parser.set(CORPUS_SECTION_NAME, PATH_KEY, _DEFAULT_CORPUS)

    parser.add_section(CHECKS_SECTION_NAME)
    parser.set(CHECKS_SECTION_NAME, DEFAULT_KEY, 'subdivision,duality,mu,quasi-iso')
    parser.set(CHECKS_SECTION_NAME, MU_SCALE_KEY, '7')

    parser.add_section(SELFTEST_SECTION_NAME)
    parser.set(SELFTEST_SECTION_NAME, RANDOM_SEED_KEY, '20160601')
    parser.set(SELFTEST_SECTION_NAME, RANDOM_TRIALS_KEY, '20')

# Install the default parameters.
_install_defaults(_configuration_parser)
