"""
Run every validator on a job without computing anything: the orientation of the complex, the
Maurer-Cartan relations of the representation, the dual data and the supplied morphisms.
"""
import logging

from supertorsion.components import representation
from supertorsion.components import simplicial
from supertorsion.components.commands.base_command import JobCommand
from supertorsion.components.errors import SupertorsionError
from supertorsion.components.payload.report import ValidationReportPayload

logger = logging.getLogger(__name__)


def validate_payload(job):
    """
    :param job: JobPayload
    :return: ValidationReportPayload
    """
    result = ValidationReportPayload(job.name)

    def attempt(validator, method, *args):
        try:
            method(*args)
        except SupertorsionError as e:
            logger.debug('Validator %s failed: %s', validator, e.message)
            result.add_error(validator, e)
            return False
        result.add_passed(validator)
        return True

    rep = job.representation
    attempt('complex', simplicial.validate_closed_oriented, job.complex)
    if not attempt('mc', representation.validate_mc, rep):
        return result

    def check_dual():
        representation.validate_mc(representation.dual(rep, job.dual))

    attempt('dual', check_dual)

    for position, (phi, target_dual) in enumerate(job.morphisms):
        def check_morphism():
            representation.validate_mc(phi.target)
            if target_dual is not None:
                representation.check_dual_compatible(phi.target, target_dual)
            representation.apply_morphism(phi)

        attempt('morphism:%s' % (phi.name or position), check_morphism)

    return result


class ValidateJob(JobCommand):

    name = 'validate'
    description = 'Check that a job describes an admissible input'

    def command_start(self, arguments):
        job = self.load_job(arguments)
        result = validate_payload(job)
        self.emit(result)
        return 0 if result.passed else 1


validate_job = ValidateJob
