import logging
import sys

from supertorsion.components import corpus
from supertorsion.components.errors import SupertorsionError
from supertorsion.components.payload.report import ErrorPayload, dumps

logger = logging.getLogger(__name__)


class BaseCommand:
    """
    Abstract implementation of a base command.
    """

    name = None
    description = None

    def __init__(self, output=None):
        self._output = output

    def add_arguments(self, parser):
        """
        Add the arguments of this command to its sub parser.
        :param parser:
        :return:
        """
        pass

    def run(self, arguments):
        """
        Starting point for the commands which will call command_start which should be overridden.
        Library errors are reported on standard output and turn into exit status 1.
        :param arguments: parsed arguments
        :return: exit status
        """
        try:
            return self.command_start(arguments)
        except SupertorsionError as e:
            logger.error('Command %s failed: %s', self.name, e.message)
            self.emit(ErrorPayload(e, getattr(arguments, 'job', None)))
            return 1

    def command_start(self, arguments):
        """
        Command starting point.
        :param arguments:
        :return: exit status
        """
        raise NotImplementedError()

    def emit(self, payload):
        output = self._output or sys.stdout
        output.write(dumps(payload.populate_payload()))
        output.write('\n')

    @staticmethod
    def load_job(arguments):
        return corpus.load_job(arguments.job)


class JobCommand(BaseCommand):
    """
    Command working on a single job file.
    """

    def add_arguments(self, parser):
        parser.add_argument('job', help='job file, or the name of a job in the corpus')
