// Generated by tools/gen_daubechies_tables.py; do not edit by hand.

#include "daubechies_tables.hpp"

namespace wws::detail {

namespace {

constexpr double k_haar[] = {
    7.071067811865475244e-1,
    7.071067811865475244e-1};

constexpr double k_db2[] = {
    4.8296291314453414337e-1,
    8.3651630373780790558e-1,
    2.2414386804201338103e-1,
    -1.2940952255126038117e-1};

constexpr double k_db3[] = {
    3.32670552950082616e-1,
    8.0689150931109257649e-1,
    4.598775021184915701e-1,
    -1.350110200102545887e-1,
    -8.5441273882026661693e-2,
    3.5226291885709536603e-2};

constexpr double k_db4[] = {
    2.3037781330889650086e-1,
    7.1484657055291564709e-1,
    6.3088076792985890788e-1,
    -2.7983769416859854211e-2,
    -1.8703481171909308408e-1,
    3.0841381835560763627e-2,
    3.2883011666885199735e-2,
    -1.0597401785069032105e-2};

constexpr double k_db5[] = {
    1.6010239797419291448e-1,
    6.0382926979718967054e-1,
    7.2430852843777292773e-1,
    1.3842814590132073151e-1,
    -2.4229488706638203186e-1,
    -3.2244869584638374648e-2,
    7.7571493840045713523e-2,
    -6.2414902127982742742e-3,
    -1.2580751999081999469e-2,
    3.335725285473771278e-3};

constexpr double k_db6[] = {
    1.1154074335010946362e-1,
    4.9462389039845308568e-1,
    7.5113390802109535068e-1,
    3.1525035170919762909e-1,
    -2.2626469396543982008e-1,
    -1.2976686756726193556e-1,
    9.7501605587323049102e-2,
    2.7522865530305728626e-2,
    -3.1582039317486029565e-2,
    5.5384220116149613925e-4,
    4.7772575109455106396e-3,
    -1.0773010853084795649e-3};

constexpr double k_db7[] = {
    7.785205408500917902e-2,
    3.9653931948191730654e-1,
    7.2913209084623511992e-1,
    4.6978228740519312247e-1,
    -1.4390600392856497541e-1,
    -2.2403618499387498264e-1,
    7.1309219266830264751e-2,
    8.0612609151083071913e-2,
    -3.802993693501441358e-2,
    -1.6574541630666880654e-2,
    1.2550998556099840613e-2,
    4.2957797292136652113e-4,
    -1.8016407040474909153e-3,
    3.5371379997452024845e-4};

constexpr double k_db8[] = {
    5.4415842243104009955e-2,
    3.1287159091429997066e-1,
    6.7563073629728980681e-1,
    5.8535468365420671277e-1,
    -1.5829105256349305667e-2,
    -2.8401554296154692652e-1,
    4.7248457391328277036e-4,
    1.2874742662047845886e-1,
    -1.736930100180754617e-2,
    -4.4088253930794751507e-2,
    1.3981027917398281649e-2,
    8.7460940474057767164e-3,
    -4.8703529934515743104e-3,
    -3.917403733769470463e-4,
    6.7544940645056936637e-4,
    -1.1747678412476953373e-4};

constexpr double k_db9[] = {
    3.8077947363878346589e-2,
    2.4383467461259035373e-1,
    6.048231236901111119e-1,
    6.5728807805130053808e-1,
    1.3319738582500757619e-1,
    -2.9327378327917490881e-1,
    -9.6840783222976460514e-2,
    1.4854074933810638014e-1,
    3.0725681479333379212e-2,
    -6.7632829061329973676e-2,
    2.5094711483145195759e-4,
    2.2361662123679097205e-2,
    -4.7232047577513972779e-3,
    -4.2815036824634298345e-3,
    1.8476468830562264766e-3,
    2.3038576352319596721e-4,
    -2.5196318894271013697e-4,
    3.9347320316271599481e-5};

constexpr double k_db10[] = {
    2.6670057900555553587e-2,
    1.8817680007769148902e-1,
    5.2720118893172558648e-1,
    6.8845903945360356574e-1,
    2.8117234366057746075e-1,
    -2.4984642432731537942e-1,
    -1.959462743773770435e-1,
    1.2736934033579326008e-1,
    9.305736460357235116e-2,
    -7.1394147166397087145e-2,
    -2.9457536821875812858e-2,
    3.321267405934100174e-2,
    3.6065535669561696554e-3,
    -1.0733175483330575044e-2,
    1.3953517470529011658e-3,
    1.9924052951850561172e-3,
    -6.8585669495971162656e-4,
    -1.1646685512928545095e-4,
    9.3588670320069591334e-5,
    -1.3264202894521244812e-5};

constexpr double k_db11[] = {
    1.8694297761471084025e-2,
    1.440670211506245128e-1,
    4.4989976435604533477e-1,
    6.8568677491620051112e-1,
    4.1196436894790746293e-1,
    -1.6227524502749036224e-1,
    -2.742308468179469612e-1,
    6.6043588196683191901e-2,
    1.4981201246637849641e-1,
    -4.6479955116684187272e-2,
    -6.6438785695025205279e-2,
    3.1335090219046076031e-2,
    2.0840904360181063023e-2,
    -1.5364820906201599426e-2,
    -3.3408588730144456061e-3,
    4.9284176560590411232e-3,
    -3.0859285881514316518e-4,
    -8.9302325066626461339e-4,
    2.4915252355282349887e-4,
    5.4439074699368471674e-5,
    -3.4634984186984995541e-5,
    4.4942742772365100954e-6};

constexpr double k_db12[] = {
    1.3112257957229517507e-2,
    1.0956627282118515461e-1,
    3.7735513521421265709e-1,
    6.571987225793070893e-1,
    5.1588647842781560876e-1,
    -4.4763885653774626668e-2,
    -3.1617845375278553686e-1,
    -2.3779257256069727684e-2,
    1.8247860592757967985e-1,
    5.3595696743521503283e-3,
    -9.6432120096507082027e-2,
    1.0849130255822184381e-2,
    4.1546277495084440739e-2,
    -1.221864906974828072e-2,
    -1.2840825198300683295e-2,
    6.7114990087955091778e-3,
    2.2486072409952376e-3,
    -2.1795036186277604716e-3,
    6.5451282125095955665e-6,
    3.8865306282093144359e-4,
    -8.8504109208204324208e-5,
    -2.424154575703078403e-5,
    1.2776952219379766587e-5,
    -1.5290717580685109027e-6};

constexpr double k_db13[] = {
    9.202133538962367973e-3,
    8.2861243872902779644e-2,
    3.119963221604380634e-1,
    6.1105585115878765282e-1,
    5.8888957043121890807e-1,
    8.698572617964723731e-2,
    -3.14972907711388633e-1,
    -1.2457673075081525894e-1,
    1.7947607942933984323e-1,
    7.2948933656777163809e-2,
    -1.0580761818793432645e-1,
    -2.648840647534369464e-2,
    5.6139477100283428862e-2,
    2.3799722540590788115e-3,
    -2.3831420710323649032e-2,
    3.9239414487974162433e-3,
    7.2555894016175661945e-3,
    -2.761911234656862178e-3,
    -1.3156739118922989366e-3,
    9.3232613086726338622e-4,
    4.9251525126289461921e-5,
    -1.6512898855650548946e-4,
    3.0678537579325493466e-5,
    1.0441930571408137082e-5,
    -4.7004164793608683257e-6,
    5.2200350984548646917e-7};

constexpr double k_db14[] = {
    6.4611534600879478182e-3,
    6.2364758849398898328e-2,
    2.5485026779262135367e-1,
    5.5430561794089383599e-1,
    6.3118784910485677956e-1,
    2.1867068775890652149e-1,
    -2.7168855227874804141e-1,
    -2.1803352999327604476e-1,
    1.3839521386480659107e-1,
    1.3998901658446070125e-1,
    -8.6748411568169689046e-2,
    -7.1548955504046130736e-2,
    5.5237126259216044116e-2,
    2.6981408307912916974e-2,
    -3.0185351540390635187e-2,
    -5.6150495303569591332e-3,
    1.2789493266333408962e-2,
    -7.4621898926838493718e-4,
    -3.8496388680221874458e-3,
    1.061691085606761843e-3,
    7.0802115423552785864e-4,
    -3.8683194731295448211e-4,
    -4.1777245770372597353e-5,
    6.8755042526975096039e-5,
    -1.0337209184570773947e-5,
    -4.3897049017813941153e-6,
    1.7249946753678127699e-6,
    -1.7871399683113590763e-7};

constexpr double k_db15[] = {
    4.5385373615788988815e-3,
    4.6743394892766271892e-2,
    2.0602386398699573154e-1,
    4.9263177170813962361e-1,
    6.4581314035742435818e-1,
    3.3900253545473152769e-1,
    -1.9320413960914542871e-1,
    -2.8888259656696564625e-1,
    6.5282952848772816923e-2,
    1.9014671400712298235e-1,
    -3.9666176555790944484e-2,
    -1.1112093603723169337e-1,
    3.3877143923507686209e-2,
    5.4780550584507612689e-2,
    -2.5767007328439962586e-2,
    -2.0810050169693081678e-2,
    1.5083918027835902363e-2,
    5.1010003604075431697e-3,
    -6.4877345603157449952e-3,
    -2.4175649076162428117e-4,
    1.9433239803822115418e-3,
    -3.7348235413761699201e-4,
    -3.5956524436246881216e-4,
    1.5589648992059974795e-4,
    2.5792699155318936809e-5,
    -2.8133296266047813648e-5,
    3.3629871817375798031e-6,
    1.8112704079405770838e-6,
    -6.3168823258816644212e-7,
    6.1333599133057520291e-8};

constexpr double k_db16[] = {
    3.1892209253477380298e-3,
    3.490771432367334641e-2,
    1.650642834888531179e-1,
    4.3031272284600381374e-1,
    6.3735633208378889863e-1,
    4.4029025688635690004e-1,
    -8.9751089402489642857e-2,
    -3.2706331052791770465e-1,
    -2.7918208133028276683e-2,
    2.1119069394710428872e-1,
    2.7340263752716041365e-2,
    -1.3238830556381039045e-1,
    -6.2397227524748717657e-3,
    7.5924236044276315821e-2,
    -7.5889743688577376385e-3,
    -3.6888397691730142334e-2,
    1.0297659640955969412e-2,
    1.399376885982873103e-2,
    -6.9900145634139166703e-3,
    -3.6442796214983899322e-3,
    3.1280233812062688317e-3,
    4.0789698084971283624e-4,
    -9.4102174935956758893e-4,
    1.1424152003872239264e-4,
    1.7478724522533818038e-4,
    -6.1035966214109358352e-5,
    -1.3945668988208893452e-5,
    1.1336608661276258588e-5,
    -1.0435713423116065015e-6,
    -7.3636567854512055121e-7,
    2.3087840868575458664e-7,
    -2.109339630100743097e-8};

constexpr double k_db17[] = {
    2.2418070010373128535e-3,
    2.5985393703606043389e-2,
    1.3121490330782440658e-1,
    3.7035072415264115045e-1,
    6.1099661568462281819e-1,
    5.1831576405693783933e-1,
    2.7314970403293635004e-2,
    -3.2832074836396173609e-1,
    -1.2659975221588270287e-1,
    1.9731058956501099279e-1,
    1.0113548917747027215e-1,
    -1.2681569177828631109e-1,
    -5.7091419631676927289e-2,
    8.110598665416088508e-2,
    2.2312336178103795953e-2,
    -4.6922438389269737333e-2,
    -3.2709555358192937817e-3,
    2.2733676583946270318e-2,
    -3.0429899813546370686e-3,
    -8.6029215203228548317e-3,
    2.9679966915260948728e-3,
    2.3012052421535456243e-3,
    -1.4368453048029761262e-3,
    -3.281325194098379714e-4,
    4.3946542776864367784e-4,
    -2.5610109566548458827e-5,
    -8.2048032024533918391e-5,
    2.3186813798745950845e-5,
    6.9906009850767512732e-6,
    -4.5059424772229881941e-6,
    3.0165496099945574156e-7,
    2.957700933316856755e-7,
    -8.4239484460026801788e-8,
    7.2674929685616081109e-9};

constexpr double k_db18[] = {
    1.5763102184407604315e-3,
    1.9288531724146377059e-2,
    1.0358846582242359622e-1,
    3.1467894133703169906e-1,
    5.7182680776660722348e-1,
    5.7180165488865133529e-1,
    1.4722311196992814158e-1,
    -2.9365404073655874425e-1,
    -2.1648093400514297112e-1,
    1.4953397556537778935e-1,
    1.6708131276325740451e-1,
    -9.2331884150846280604e-2,
    -1.0675224665982848559e-1,
    6.4887216211905442819e-2,
    5.7051247738536884121e-2,
    -4.4526141902982324716e-2,
    -2.3733210395860001033e-2,
    2.66707059264705903e-2,
    6.2621679543057074852e-3,
    -1.3051480946612001773e-2,
    1.1863003385811746573e-4,
    4.9433436054667381307e-3,
    -1.1187326669924970728e-3,
    -1.3405962983361066295e-3,
    6.2846568296514571256e-4,
    2.135815619103406884e-4,
    -1.9864855231174794858e-4,
    -1.5359171235347246751e-7,
    3.7412378807400381811e-5,
    -8.5206025374466952039e-6,
    -3.3326344788858218888e-6,
    1.7687129836276154559e-6,
    -7.691632689885176146e-8,
    -1.1760987670282316985e-7,
    3.0688358630451748009e-8,
    -2.5079344549485982672e-9};

constexpr double k_db19[] = {
    1.1086697631817105711e-3,
    1.4281098450764397374e-2,
    8.1278113265459550653e-2,
    2.6438843174089678467e-1,
    5.2443637746465491534e-1,
    6.0170454912753789489e-1,
    2.6089495265103882929e-1,
    -2.2809139421548264637e-1,
    -2.8583863175582624185e-1,
    7.4652269708103266368e-2,
    2.1234974330627848881e-1,
    -3.3518541902302878682e-2,
    -1.4278569503873657498e-1,
    2.758435062562866875e-2,
    8.6906755555812232488e-2,
    -2.6501236250123040899e-2,
    -4.5674226277230908056e-2,
    2.162376740958504713e-2,
    1.9375549889176127646e-2,
    -1.3988388678535141633e-2,
    -5.8669222810121747266e-3,
    7.040747367105243153e-3,
    7.6895435925754835597e-4,
    -2.687551800701582004e-3,
    3.4180865345859577657e-4,
    7.3580252050543520703e-4,
    -2.6067613567862800573e-4,
    -1.2460079173415877534e-4,
    8.7112704672199229654e-5,
    5.105950487073886053e-6,
    -1.6640176297154944546e-5,
    3.0109643162965263397e-6,
    1.5319314766911930639e-6,
    -6.8627556577691427019e-7,
    1.4470882987978445421e-8,
    4.6369377757826042234e-8,
    -1.1164020670358258164e-8,
    8.6668488389976193503e-10};

constexpr double k_db20[] = {
    7.7995361366684632159e-4,
    1.0549394624950398325e-2,
    6.3423780459081514976e-2,
    2.1994211355139704501e-1,
    4.7269618531090169637e-1,
    6.1049323893859382016e-1,
    3.6150229873933106292e-1,
    -1.3921208801148387258e-1,
    -3.267868004340349674e-1,
    -1.6727088309077007575e-2,
    2.2829105081991632297e-1,
    3.9850246457771202198e-2,
    -1.5545875070726795593e-1,
    -2.4716827338613584016e-2,
    1.0229171917444255789e-1,
    5.632246857307435507e-3,
    -6.1722899624680459733e-2,
    5.8746818118118264913e-3,
    3.2294299530769581759e-2,
    -8.7893249239015613488e-3,
    -1.3810526137151920078e-2,
    6.7216273022594568353e-3,
    4.4205423870457909631e-3,
    -3.5814942596096227776e-3,
    -8.3156217282255691925e-4,
    1.3925596193231363239e-3,
    -5.3497598439976950518e-5,
    -3.8510474869921760607e-4,
    1.0153288973670290508e-4,
    6.774280828377729558e-5,
    -3.7105861833947128642e-5,
    -4.3761438621839968104e-6,
    7.2412482876736201028e-6,
    -1.0119940100188861503e-6,
    -6.8470795970005568942e-7,
    2.6339242262700010841e-7,
    2.0143220235505126943e-10,
    -1.8148432482996959732e-8,
    4.0561270555518327661e-9,
    -2.9988364896193195664e-10};

}  // namespace

const std::array<FilterTableEntry, 20>& daubechies_tables() {
  static const std::array<FilterTableEntry, 20> tables{{
    {"haar", k_haar},
    {"db2", k_db2},
    {"db3", k_db3},
    {"db4", k_db4},
    {"db5", k_db5},
    {"db6", k_db6},
    {"db7", k_db7},
    {"db8", k_db8},
    {"db9", k_db9},
    {"db10", k_db10},
    {"db11", k_db11},
    {"db12", k_db12},
    {"db13", k_db13},
    {"db14", k_db14},
    {"db15", k_db15},
    {"db16", k_db16},
    {"db17", k_db17},
    {"db18", k_db18},
    {"db19", k_db19},
    {"db20", k_db20}
  }};
  return tables;
}

}  // namespace wws::detail
