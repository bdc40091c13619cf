"""
Cohomology of the twisted cochains of a job together with the page table of its degree filtration.
"""
import logging

from supertorsion.components import representation
from supertorsion.components import spectral
from supertorsion.components.commands.base_command import JobCommand
from supertorsion.components.payload.report import CohomologyReportPayload

logger = logging.getLogger(__name__)


def cohomology_payload(job):
    complex_ = representation.cochain_complex(job.representation)
    cohomology = spectral.cohomology(complex_)
    table = spectral.page_table(complex_)
    logger.info('Cohomology of %s has dimensions %s', job.name, cohomology.dims)
    return CohomologyReportPayload(cohomology.dims, table, job.name)


class ComputeCohomology(JobCommand):

    name = 'cohomology'
    description = 'Compute the cohomology and the spectral sequence pages'

    def command_start(self, arguments):
        self.emit(cohomology_payload(self.load_job(arguments)))
        return 0


compute_cohomology = ComputeCohomology
