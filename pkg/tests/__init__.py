import unittest

from .test_graph import TestVistaGraphLoad,TestVistaGraphValidate,TestVistaGraphAttributes
from .test_perception import TestVistaRange,TestVistaPartition,TestVistaDetectionStream
from .test_retrieval import (TestVistaPathSearch,TestVistaEntityMatch,TestVistaSimilarity,
                             TestVistaTextualize,TestVistaMetrics,TestVistaTasks)
from .test_memory import TestVistaMemory
from .test_skills import TestVistaLibrary,TestVistaGrammar,TestVistaExecute
from .test_sim import TestVistaWorld,TestVistaCamera,TestVistaSimulator,TestVistaBackend
from .test_policy import TestVistaScripted,TestVistaEndpointConfig,TestVistaRemote
from .test_agent import TestVistaPrompt,TestVistaAgentStep
from .test_harness import (TestVistaRun,TestVistaConfig,TestVistaBench,TestVistaTokens,
                           TestVistaRemoteEpisode,TestVistaCli)

if __name__ == '__main__':
    unittest.main()
