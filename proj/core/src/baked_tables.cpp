// Generated by tools/gen_tables from seed 0xAB5EED01.  Do not edit by hand;
// regenerate with `gen_tables > core/src/baked_tables.cpp` if the genesis
// procedure in tables_gen.cpp ever changes.

#include "affilab/tables.hpp"

namespace affilab {

namespace {

constexpr std::array<double, 20> kTheta = {
    1.7021176901925976,
    1.0463542269718185,
    1.0000698802127068,
    1.010940830501055,
    1.4455406677582197,
    0,
    0.99104587245847475,
    2.07001344833798,
    1.8262582277216599,
    1.8626624654829111,
    1.3944257328221858,
    0.69450860559396699,
    1.3345956140354502,
    1.8975139113337112,
    1.1356795944925822,
    2.0055881774670845,
    0.76352307567475497,
    1.1665627403555354,
    1.1766365102871177,
    0.9005158714229029,
};

constexpr std::array<double, 20> kPhi = {
    2.3256912928931692,
    -1.1964502267974055,
    1.0486682993567342,
    -0.6722843042939366,
    0.9557730999448566,
    2.2200284421546215,
    -2.3253263958591677,
    1.0122710400680797,
    2.0920521660756366,
    -2.5031866218831551,
    2.4804094402520205,
    -0.12708739838705441,
    -2.0757682499480792,
    -1.2243795081107038,
    2.3576461547048781,
    -1.9048234562474493,
    2.5413449080015011,
    -3.0284198604993482,
    2.5486023403825016,
    1.7512169731131975,
};

constexpr std::array<std::array<double, 20>, 20> kW = {{
    {{3.0319704882241796, 1.1930180140845947, 1.6815565790152331, 0.57341031942325849, 0.38545859686983519, 0.0077790254377632095, 0.98982729783137069, 0.047214976940986642, 0.73852462289127674, 0.59212858592039996, 0.97566315593723152, 1.1554208169190732, 1.1121465024209769, 0.86952258248967107, 0.12851011355592501, 1.2314480631262161, 0.18929079339299903, 1.4683195424374591, 0.79567968730829142, 0.70975931808673476}},
    {{1.1930180140845947, 1.337154122075249, 1.4185760638605678, 0.23269254842990961, -0.80403044721090122, 0.31987856380625113, -0.48857260271887304, -0.46730920289277567, 1.9079152634848358, 0.080742640741908289, 0.51725241564164426, 0.72689439323861249, 1.1379497189523993, 0.13106032091308251, -0.33702164976853188, 1.8709849444918474, -0.31759344367833897, 0.69235901278533918, 0.30222700608198716, 0.88673645016345271}},
    {{1.6815565790152331, 1.4185760638605678, 2.6134027231477259, -0.11057188294245135, 0.74699075686178995, 0.17435633778277326, -0.1532154371824519, -0.44689610524713608, 2.1714560019403999, -0.00042898910835020843, 1.8251720554922577, 1.2120094275966475, 1.9677551783563234, 0.3634292254144591, 0.51113121882176449, 1.6908890459776922, 1.0771278940571176, 0.8281433361490409, 0.6597792890676728, 2.6636838707312358}},
    {{0.57341031942325849, 0.23269254842990961, -0.11057188294245135, -0.40944252286355187, -1.9195074939269112, -0.20736242838015695, -1.6381394349239118, -1.147505645351047, 0.91230249147304887, -0.38697384618692032, -0.60268599999035866, 0.20966909988999483, 0.33744454166906035, -0.58153834801373572, -0.95035000507410894, 1.0646555966883167, -1.0765081190553656, -0.36700225118353691, -0.002648353458176711, 0.03745595124743728}},
    {{0.38545859686983519, -0.80403044721090122, 0.74699075686178995, -1.9195074939269112, -1.7733067854546283, -2.0340730771123297, -0.93917439489918753, -1.709266621334729, 0.97791057267137216, -1.147140972521854, -0.9322139299293255, -0.89174800967081547, 0.79000708945891684, -1.5559455609266575, -1.954916610570653, -0.19886176860930371, -1.2233161915496935, -0.28248329629260249, -0.95952773665523994, -1.0361910581481819}},
    {{0.0077790254377632095, 0.31987856380625113, 0.17435633778277326, -0.20736242838015695, -2.0340730771123297, -0.64478262296765143, -0.057146403227636533, 0.082722679415033529, 0.54969945890835969, -0.896960750789209, -0.28668279434765154, -0.32814071105545128, 0.57267359895841619, -0.39410317353025137, -0.68692491598267047, -0.397728504801655, -1.2060000451312316, -0.32278923503224588, -0.064963848900409626, -0.40225042549208911}},
    {{0.98982729783137069, -0.48857260271887304, -0.1532154371824519, -1.6381394349239118, -0.93917439489918753, -0.057146403227636533, -1.2174469113082167, -1.5397480261322745, -0.21834113294308199, -0.25771555881945796, -1.5701912365599395, -0.081956812016588554, -0.15332648089119383, -1.3572890578558319, -1.1203248305187228, 0.61303779050734297, -1.0670557678551198, -0.35707919225750784, -0.32341651820575024, 0.1192125873652623}},
    {{0.047214976940986642, -0.46730920289277567, -0.44689610524713608, -1.147505645351047, -1.709266621334729, 0.082722679415033529, -1.5397480261322745, -1.0788168800976052, -0.4888191925549914, -2.0559215008805611, -0.52072111086527473, -1.3675409112919081, -0.044107657191173821, -1.8955625449430893, -1.3796862883051384, 0.14426106279442141, -1.1966770024098339, -0.07777676590726923, -1.3142411571538273, -0.52457150480893899}},
    {{0.73852462289127674, 1.9079152634848358, 2.1714560019403999, 0.91230249147304887, 0.97791057267137216, 0.54969945890835969, -0.21834113294308199, -0.4888191925549914, -0.00089228992648981986, 0.02095291700466051, 1.1107373603089927, -0.43747239938648752, 1.2366441646738293, 0.33618160978224987, 0.11600620334273204, 1.6561970631262279, -0.083725357034997394, 1.452216022062029, 0.78966084669013137, 1.1014697240005482}},
    {{0.59212858592039996, 0.080742640741908289, -0.00042898910835020843, -0.38697384618692032, -1.147140972521854, -0.896960750789209, -0.25771555881945796, -2.0559215008805611, 0.02095291700466051, 0.052496969785540415, -0.13030458426024394, -0.45002639692801916, 0.33976158785507549, -0.42351522563213795, -0.43820155282867068, 0.28368978397974365, -0.47176862127228114, 0.55982385926206124, 0.56395943327385956, -0.83513141962495463}},
    {{0.97566315593723152, 0.51725241564164426, 1.8251720554922577, -0.60268599999035866, -0.9322139299293255, -0.28668279434765154, -1.5701912365599395, -0.52072111086527473, 1.1107373603089927, -0.13030458426024394, -0.43322626842262579, -0.39533846669721528, 1.1996745262426849, -0.41765796960931523, 0.099607400015232717, 0.97820836404609413, -0.45647920880146975, 0.45835072064756632, 0.32953447670349867, 0.23785174779265361}},
    {{1.1554208169190732, 0.72689439323861249, 1.2120094275966475, 0.20966909988999483, -0.89174800967081547, -0.32814071105545128, -0.081956812016588554, -1.3675409112919081, -0.43747239938648752, -0.45002639692801916, -0.39533846669721528, -0.19152149177496502, 1.5364667505071088, 0.014987335089384768, -0.20285768769556034, 0.59540997573721954, -0.94217740026001007, 0.048476554480789691, 0.64844075935806966, 0.37789777045873763}},
    {{1.1121465024209769, 1.1379497189523993, 1.9677551783563234, 0.33744454166906035, 0.79000708945891684, 0.57267359895841619, -0.15332648089119383, -0.044107657191173821, 1.2366441646738293, 0.33976158785507549, 1.1996745262426849, 1.5364667505071088, 1.2734410474047144, 0.97461140947497382, 0.041722006722677563, 1.2757491246946038, -0.38439267865713012, 0.94809791819813505, 1.2027951326449906, 1.6202188702874225}},
    {{0.86952258248967107, 0.13106032091308251, 0.3634292254144591, -0.58153834801373572, -1.5559455609266575, -0.39410317353025137, -1.3572890578558319, -1.8955625449430893, 0.33618160978224987, -0.42351522563213795, -0.41765796960931523, 0.014987335089384768, 0.97461140947497382, -0.23547471522193852, -1.1747567490434059, 0.083554073417555053, -1.0709550734721254, -0.11357622753921603, 0.12888739051923714, 0.50588938053515742}},
    {{0.12851011355592501, -0.33702164976853188, 0.51113121882176449, -0.95035000507410894, -1.954916610570653, -0.68692491598267047, -1.1203248305187228, -1.3796862883051384, 0.11600620334273204, -0.43820155282867068, 0.099607400015232717, -0.20285768769556034, 0.041722006722677563, -1.1747567490434059, -0.20274507526944108, -0.28062650221250829, -0.98066131888240538, -0.60065486914155475, -0.65148241540286644, 0.32504196541315267}},
    {{1.2314480631262161, 1.8709849444918474, 1.6908890459776922, 1.0646555966883167, -0.19886176860930371, -0.397728504801655, 0.61303779050734297, 0.14426106279442141, 1.6561970631262279, 0.28368978397974365, 0.97820836404609413, 0.59540997573721954, 1.2757491246946038, 0.083554073417555053, -0.28062650221250829, 2.0255111257420673, 0.13160683813992335, 0.15264393589507108, -0.52048417607264374, 0.25752758872071446}},
    {{0.18929079339299903, -0.31759344367833897, 1.0771278940571176, -1.0765081190553656, -1.2233161915496935, -1.2060000451312316, -1.0670557678551198, -1.1966770024098339, -0.083725357034997394, -0.47176862127228114, -0.45647920880146975, -0.94217740026001007, -0.38439267865713012, -1.0709550734721254, -0.98066131888240538, 0.13160683813992335, -2.3694387325582196, 0.78637010649371231, -0.34468535017135826, 1.0184714147171716}},
    {{1.4683195424374591, 0.69235901278533918, 0.8281433361490409, -0.36700225118353691, -0.28248329629260249, -0.32278923503224588, -0.35707919225750784, -0.07777676590726923, 1.452216022062029, 0.55982385926206124, 0.45835072064756632, 0.048476554480789691, 0.94809791819813505, -0.11357622753921603, -0.60065486914155475, 0.15264393589507108, 0.78637010649371231, 1.2137799570775405, 0.027876934339765125, 0.57853143328387224}},
    {{0.79567968730829142, 0.30222700608198716, 0.6597792890676728, -0.002648353458176711, -0.95952773665523994, -0.064963848900409626, -0.32341651820575024, -1.3142411571538273, 0.78966084669013137, 0.56395943327385956, 0.32953447670349867, 0.64844075935806966, 1.2027951326449906, 0.12888739051923714, -0.65148241540286644, -0.52048417607264374, -0.34468535017135826, 0.027876934339765125, 0.33734383490658093, 0.056152037549991096}},
    {{0.70975931808673476, 0.88673645016345271, 2.6636838707312358, 0.03745595124743728, -1.0361910581481819, -0.40225042549208911, 0.1192125873652623, -0.52457150480893899, 1.1014697240005482, -0.83513141962495463, 0.23785174779265361, 0.37789777045873763, 1.6202188702874225, 0.50588938053515742, 0.32504196541315267, 0.25752758872071446, 1.0184714147171716, 0.57853143328387224, 0.056152037549991096, 0.7569270254477245}},
}};

constexpr std::array<std::array<double, 20>, 20> kMarkov = {{
    {{0.0011686292131075171, 0.019012449943019163, 0.040248112939274189, 0.05592986304894184, 0.12431703931734281, 0.004610430314897278, 0.08776973619638935, 0.01338026176246891, 0.04788904694842093, 0.06995404946805639, 0.10464068450008991, 0.013931527354830948, 0.14120502015080907, 0.046697263432720904, 0.0068496911982911064, 0.062081171963628494, 0.090476685505756868, 0.027469653873456085, 0.030160340867675734, 0.012208342000822839}},
    {{0.05087283020401754, 0.066489638499225914, 0.0011183988162804389, 0.087922863725453423, 0.0093189852923390316, 0.043343310906630975, 0.00069160061851431572, 0.037129561765224389, 0.087184567543795846, 0.038070702532849693, 0.0034132071872468909, 0.0019061199522954506, 0.066097819650301218, 0.092499054872293276, 0.11126112408931793, 0.026956302104389457, 0.12837058440335919, 0.061377405227452921, 0.085603561759719796, 0.00037236084929217816}},
    {{0.11515966974920419, 0.14061634677849083, 0.094094201660754856, 0.014420137532018021, 0.078437614127809419, 0.025963178307925754, 0.024568011269629167, 0.059495440154193467, 0.087973552307636954, 0.0031234856821248077, 0.00058984327007656934, 0.0012293347051238522, 0.059256631928736841, 0.0081105409601615937, 0.041455362624369482, 0.0011051233755930521, 0.0056973877714220763, 0.069746633039210873, 0.12318570940577979, 0.045771795349738312}},
    {{0.046372774349879929, 0.080360979054946768, 0.0091430840973061988, 0.0012359429282660021, 0.12999769871575245, 0.041007422814443265, 0.0046595857254451388, 0.034920664667386539, 0.043591690312996499, 0.0046616211493183202, 0.0069566060715188982, 0.042009973046612047, 0.025302178217333628, 0.048812216346891854, 0.13377172900287992, 0.033800389999012304, 0.1197547554511266, 0.05954955634105296, 0.12708692959456955, 0.0070042021132609737}},
    {{0.089332076630303084, 0.026254216562764925, 0.00073182326788519096, 0.054238883896929081, 0.00032871494003456589, 0.088315946975006679, 0.029988746279416029, 0.0036106715473569967, 0.11575067056495258, 0.0098371459320370537, 0.040161116332248767, 0.001295939110923046, 0.03654338174501208, 0.098218669357191216, 0.040740826381600412, 0.0031186713813045959, 0.035473086767519972, 0.1016006654895666, 0.11992145426578997, 0.10453729257215726}},
    {{0.0043715508791461874, 0.09354891910799866, 0.10015400097942405, 0.1340058125639276, 0.10421030457978062, 0.03373691754602251, 0.098004499503316203, 0.12453938887307557, 0.025867448533036238, 0.01300239425084491, 0.051393010014967606, 0.0096014165574188001, 0.09568792742505218, 0.041077651606696672, 0.0035108409737342489, 0.0077775850377279944, 0.013341790441558811, 0.017164151305007373, 0.0060544609184917829, 0.022949928902771932}},
    {{0.016189245055050695, 0.028060635951362638, 0.084399513888195166, 0.0046030874042492171, 0.079616306739652559, 0.10195687003976722, 0.051505500613365202, 0.0057552669906680235, 0.076171134886553762, 0.039946996732254346, 0.03707054378836052, 0.0177914939312168, 0.094558777096957036, 0.075053452423383099, 0.08863542142570234, 0.0013480401492498911, 0.082565873821494287, 0.058212845947247162, 0.0099781699048388673, 0.046580823210431138}},
    {{0.1389413797898785, 0.051807969966200434, 0.0006924490943615388, 0.17624688741755973, 0.00069812443036601577, 0.057558650087451937, 0.14085636025899725, 0.022432826986768545, 0.063301475035454649, 0.031304026533632096, 0.05405816389890486, 0.028008214121287383, 0.028568270823991548, 0.043109230357683652, 0.015986943646161319, 0.029439011214623525, 0.0062379687757036523, 0.059592328311452072, 0.0052590473300340116, 0.045900671919487386}},
    {{0.057110461380716557, 0.030271026253888524, 0.018587367098359876, 0.083258079271996799, 0.018868168343997595, 0.068586569735548247, 0.093488445995596248, 0.052007386060235118, 0.0088195994858281182, 0.12522898030294222, 0.056972324563748275, 0.034000157869697956, 0.065073357521966441, 0.025527626471992387, 0.044424380677859046, 0.12597349703705499, 0.012618175455846738, 0.024686812603802313, 0.052870984791349482, 0.0016265990775729282}},
    {{0.013321764502988408, 0.070151124488360694, 0.1052172378077405, 0.025544990828403485, 0.095428055322516955, 0.12328907044456967, 0.0012735934264790996, 0.097771721161963338, 0.00043653157759317342, 0.036508561694158503, 0.041411123453544238, 0.10787674502794435, 0.0044308541325467302, 0.13183038056902202, 0.081824722938531269, 0.0065127480624295724, 0.0021678252516703581, 0.045845224394406449, 0.0036169929271729247, 0.0055407319879581772}},
    {{0.038110833688195601, 0.11826746699099927, 0.0003624174555676992, 0.058507132044666468, 0.081033563666114652, 0.037273713933364067, 0.027087974635049385, 0.012557278842449275, 0.12525397147082326, 0.097993293486770799, 0.12151091500576673, 0.072977850959120835, 0.0051078420384729735, 0.0022444985289081223, 0.0039375139647917284, 0.0071411568781928995, 0.070424613415484352, 0.0048107706470828966, 0.088542700462668947, 0.026854491885510128}},
    {{0.0085606301325231952, 0.0075118144983289366, 0.15422952671787257, 0.14671335508528302, 0.009872511546618612, 0.0041503940348040034, 0.02523010800706587, 0.054856514085816779, 0.057075625346938594, 0.00076638831252576417, 0.048283449991966619, 0.026461576671400373, 0.0015573400257209258, 0.0075780032514136415, 0.066118133058781225, 0.045147034294702029, 0.11273985522285788, 0.093222116456189275, 0.025278512512205743, 0.10464711074698504}},
    {{0.044171895862524159, 0.0067207975085373014, 0.11353362415629983, 0.076252748659752206, 0.013309108094085323, 0.020534057113433955, 0.042450702551716915, 0.011046896087101112, 0.0023340157136967268, 0.025704764239311256, 0.06224858692541408, 0.068801828846513355, 0.035178702356270623, 0.14501304133289844, 0.16795882625519351, 0.025838189507532677, 0.089267018273773438, 0.013093305772865958, 0.034759251892413884, 0.0017826388506651805}},
    {{0.10719469404387796, 0.054035415374193076, 0.019112581753558941, 0.03206185106619381, 0.066590936076719176, 0.0029196335617960052, 0.0060495189875380394, 0.081990467225169519, 0.09238961625673546, 0.12445260537061265, 0.12258058150561542, 0.053192411347178843, 0.035092673642798319, 0.1047479365916838, 0.0083452133856451328, 0.0034631990991253522, 0.012286628116961067, 0.03552157986505327, 0.014274331911214268, 0.023698124818329877}},
    {{0.00054190357118931508, 0.11862935014227745, 0.0021607718567568809, 0.10033533699794679, 0.074556114772656321, 0.018088349924129905, 0.064801828200542963, 0.032519894243311309, 0.032938485665482492, 0.075784051633616553, 0.098924686328938055, 0.0047088089805455667, 0.069098231334625351, 0.0089451811804386345, 0.05426101968261713, 0.086677935416073104, 0.022769009193363453, 0.064630851396532588, 0.029054178798503739, 0.040574010680452542}},
    {{0.044032501298263617, 0.044588166557499163, 0.051828237155703186, 0.052326497842173206, 0.0097555821050595015, 0.066305022584846468, 0.0013779154297825264, 0.027979612538067414, 0.14115212384685819, 0.038458974380609232, 0.019532032731522601, 0.0014518384064811745, 0.082409004579809209, 0.12821546484288168, 0.054588793021296503, 0.0052138945737193066, 0.033579563505700523, 0.11994101256015975, 0.058423776119317865, 0.01883998592024887}},
    {{0.050085966693656808, 0.056208638584338312, 0.047440668770233549, 0.032843874447757083, 0.1131300512632771, 0.11967910819747601, 0.032495877939865858, 0.015495651105165952, 0.061031618422267758, 0.11892948413758615, 0.017155463772827794, 0.046308027808117803, 0.082882850645625089, 0.04999945337776817, 0.074008892176734592, 0.008218663588339439, 0.030261996443217792, 0.0035655718472731562, 0.012044868272607728, 0.028213272505863845}},
    {{0.13860927019322264, 0.04855803500862662, 0.071179348686604818, 0.042027574036033993, 0.00078804661038630599, 0.011821683682714027, 0.048126715923218204, 0.069565805636662842, 0.035065286093827676, 0.044092003866416325, 0.0016118740794651069, 0.088779375588530565, 0.0043779909227100984, 0.13405020884742685, 0.01902460177346459, 0.10327128238520362, 0.025946547429247936, 0.0090080844126972249, 0.049748760228727068, 0.054347504594813606}},
    {{0.00041428175063880801, 0.052780606374698287, 0.0023798348358064539, 0.010290855620707574, 0.0098771243598349615, 0.03256430524168126, 0.062418803171991208, 0.020381788038932532, 0.11356209483140223, 0.04313607205301604, 0.084047595757511778, 0.096237299856981262, 0.025013451396891019, 0.071086352000404252, 0.0045036325612292328, 0.065491137863626953, 0.012359096467514629, 0.12757810419238994, 0.058044104947243921, 0.10783345867749761}},
    {{0.095080566310515841, 0.14404215268996706, 0.010741653898405201, 0.00098877203772363515, 0.060266888700414148, 0.12260744782081569, 0.020296399976358681, 0.0063893275976121362, 0.081475369661843655, 0.14812331380129107, 0.013340542321380777, 0.003907574667815876, 0.010225819028419719, 0.01672137499337931, 0.012453896979516953, 0.1431179677585947, 0.0035142672082532421, 0.020544309412789712, 0.017994101455895861, 0.068168253679006752}},
}};

constexpr std::array<double, 20> kMarkovInit = {
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
    0.050000000000000003,
};

} // namespace

const WorldTables& baked_tables() {
    static const WorldTables t{kTheta, kPhi, kW, kMarkov, kMarkovInit};
    return t;
}

} // namespace affilab
