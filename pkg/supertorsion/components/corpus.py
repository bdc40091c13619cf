"""
Access to the directory of job files shipped with the package.
"""
import logging
import os

from supertorsion import configuration
from supertorsion.components.payload.job import JobPayload

logger = logging.getLogger(__name__)

JOB_EXTENSION = '.json'


def get_corpus_path():
    return configuration.get_corpus_path()


def list_jobs(path=None):
    """
    Names of the jobs in the corpus, sorted.
    """
    path = path or get_corpus_path()
    if not os.path.isdir(path):
        logger.warning('Corpus directory does not exist: %s', path)
        return []
    return sorted(os.path.splitext(filename)[0] for filename in os.listdir(path) if filename.endswith(JOB_EXTENSION))


def resolve(reference, path=None):
    """
    File name of a job given either as a path or as the name of a corpus job.
    """
    if os.path.isfile(reference):
        return reference
    candidate = os.path.join(path or get_corpus_path(), reference)
    if not candidate.endswith(JOB_EXTENSION):
        candidate += JOB_EXTENSION
    if os.path.isfile(candidate):
        return candidate
    return reference


def load_job(reference, path=None):
    """
    :raises ParseError: if the job cannot be read or parsed.
    :return: JobPayload
    """
    payload = JobPayload.from_file(resolve(reference, path))
    if payload.name is None:
        payload.name = os.path.splitext(os.path.basename(reference))[0]
    return payload


def load_corpus(path=None):
    """
    :return: list of (name, JobPayload)
    """
    return [(name, load_job(name, path)) for name in list_jobs(path)]
